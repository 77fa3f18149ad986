#include "wsaw/lace.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "wsaw/errors.hpp"

namespace wsaw {

namespace {

void check_unit_constant_term(const SpatialSeries& g) {
  const int d = g.dim();
  const LatticePoint origin(d);
  if (!(g.coeff(origin, 0) == Rational(1)))
    throw argument_error("series_inverse: constant term at origin must be 1");
  for (const auto& e : g.entries()) {
    if (e.first.is_origin()) continue;
    if (!(e.second.coeff(0) == Rational(0)))
      throw argument_error(
          "series_inverse: constant term must vanish away from the origin");
  }
}

}  // namespace

SpatialSeries series_inverse(const SpatialSeries& g, Exec exec) {
  if (g.dim() <= 0) throw argument_error("series_inverse: empty series");
  if (!g.orbit_reduced())
    throw argument_error("series_inverse: expects orbit-reduced input");
  check_unit_constant_term(g);

  const int d = g.dim();
  const int N = g.order();
  const LatticePoint origin(d);

  SpatialSeries F(d, N);
  F.add_coeff(origin, 0, Rational(1));

  const auto g_support = g.expanded_support();
  const int rg = std::max(1, g.support_radius_l1());

  for (int n = 1; n <= N; ++n) {
    const int radius = g.walk_support() ? n : n * rg;
    const auto cands = reps_l1_ball(d, radius);
    std::vector<Rational> acc(cands.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(cands.size()); ++i) {
      Rational v;
      for (const auto& [y, poly] : g_support) {
        const ZPolynomial& q = F.value_at(cands[std::size_t(i)] - y);
        for (int m = 1; m <= n; ++m) {
          const Rational& c = poly->coeff(m);
          if (c == 0) continue;
          const Rational& w = q.coeff(n - m);
          if (w == 0) continue;
          v -= c * w;
        }
      }
      acc[std::size_t(i)] = std::move(v);
    }
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (!(acc[i] == 0)) F.add_coeff(cands[i], n, acc[i]);
  }
  F.set_walk_support(g.walk_support());
  return F;
}

SpatialSeries invert_to_F(const GSeries& g, Exec exec) {
  return series_inverse(g.series, exec);
}

PiSeries pi_from_F(SpatialSeries F) {
  const int d = F.dim();
  const int N = F.order();
  SpatialSeries pi = delta_series(d, N);
  if (N >= 1)
    pi = pi - step_distribution(d, N).z_shifted(1).scaled(Rational(2 * d));
  pi = pi - F;
  pi.prune_zeros();
  pi.set_walk_support(satisfies_walk_support(pi));
  return PiSeries{std::move(pi), std::move(F)};
}

RecursionReport verify_recursion(const GSeries& g, const PiSeries& pi,
                                 Exec exec) {
  const int d = g.params.d;
  const int N = g.series.order();
  if (pi.pi.dim() != d || pi.pi.order() != N)
    throw argument_error("verify_recursion: mismatched dimensions or orders");

  SpatialSeries rhs = delta_series(d, N);
  if (N >= 1)
    rhs = rhs + convolve(step_distribution(d, N), g.series, exec)
                    .z_shifted(1)
                    .scaled(Rational(2 * d));
  rhs = rhs + convolve(pi.pi, g.series, exec);
  rhs.prune_zeros();

  RecursionReport rep;
  rep.order = N;

  auto it_l = g.series.entries().begin();
  const auto end_l = g.series.entries().end();
  auto it_r = rhs.entries().begin();
  const auto end_r = rhs.entries().end();
  const ZPolynomial zero(N);
  auto fail = [&](const LatticePoint& x, int n, const Rational& lhs,
                  const Rational& rv) {
    std::ostringstream os;
    os << "recursion identity fails at order " << n << ", x=(";
    for (int j = 0; j < d; ++j) os << (j ? "," : "") << x[j];
    os << "): series coefficient " << to_string(lhs) << ", reconstruction "
       << to_string(rv);
    throw verification_error(os.str());
  };
  auto compare = [&](const LatticePoint& x, const ZPolynomial& a,
                     const ZPolynomial& b) {
    for (int n = 0; n <= N; ++n) {
      const Rational& ca = a.coeff(n);
      const Rational& cb = b.coeff(n);
      if (!(ca == cb)) fail(x, n, ca, cb);
      ++rep.entries_compared;
      if (!(ca == 0)) ++rep.nonzero_entries;
    }
  };
  while (it_l != end_l || it_r != end_r) {
    if (it_r == end_r || (it_l != end_l && it_l->first < it_r->first)) {
      compare(it_l->first, it_l->second, zero);
      ++it_l;
    } else if (it_l == end_l || it_r->first < it_l->first) {
      compare(it_r->first, zero, it_r->second);
      ++it_r;
    } else {
      compare(it_l->first, it_l->second, it_r->second);
      ++it_l;
      ++it_r;
    }
  }
  return rep;
}

PiDecayAudit pi_decay_audit(const PiSeries& pi, double z,
                            const Rational& beta) {
  const int d = pi.pi.dim();
  PiDecayAudit audit;
  audit.exponent = 3 * (d - 2);
  const double b = to_double(beta);

  auto fit = [&](const SpatialSeries& s) {
    double worst = 0;
    for (const auto& e : s.entries()) {
      const double val = std::fabs(e.second.eval_double(z));
      if (val == 0) continue;
      audit.max_abs_pi = std::max(audit.max_abs_pi, val);
      const double r = std::sqrt(double(e.first.norm2()));
      const double shape =
          e.first.is_origin() ? 1.0 : 1.0 + std::pow(r, double(audit.exponent));
      worst = std::max(worst, val * shape);
    }
    return b > 0 ? worst / b : worst;
  };

  audit.K = fit(pi.pi);
  if (pi.pi.order() >= 1) audit.K_prev_order = fit(pi.pi.truncated(pi.pi.order() - 1));
  if (audit.K_prev_order == 0)
    audit.stable = (audit.K == 0);
  else
    audit.stable = std::fabs(audit.K / audit.K_prev_order - 1.0) <= 0.2;
  return audit;
}

}  // namespace wsaw
