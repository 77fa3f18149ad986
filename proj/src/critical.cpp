#include "wsaw/critical.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "wsaw/errors.hpp"

namespace wsaw {

Decomposition lambda_mu(const PiSeries& pi, const Rational& z) {
  Decomposition dec;
  dec.d = pi.pi.dim();
  dec.z = z;
  const SpatialSeries pi_z = pi.pi.evaluated_at(z);
  dec.pihat0 = moment(pi_z, 0);
  dec.pi_m2 = moment(pi_z, 2);
  const Rational den = Rational(1) - dec.pihat0 + dec.pi_m2;
  if (den == 0)
    throw degeneracy_error("lambda_mu: 1 - Pihat(0) + m2(Pi) vanishes");
  dec.lambda = Rational(1) / den;
  const Rational omega(2 * dec.d);
  dec.Fhat0 = Rational(1) - z * omega - dec.pihat0;
  const Rational mu_omega = Rational(1) - dec.lambda * dec.Fhat0;
  dec.mu = mu_omega / omega;
  return dec;
}

Decomposition build_E(const PiSeries& pi, const Rational& z) {
  Decomposition dec = lambda_mu(pi, z);
  const int d = dec.d;
  const SpatialSeries pi_z = pi.pi.evaluated_at(z);
  const SpatialSeries dl = delta_series(d, 0);
  const SpatialSeries D = step_distribution(d);

  dec.E = (dl - D).scaled(Rational(1) - dec.lambda) -
          D.scaled(dec.lambda * dec.pihat0) + pi_z.scaled(dec.lambda);
  dec.E.prune_zeros();
  dec.E_m0 = moment(dec.E, 0);
  dec.E_m2 = moment(dec.E, 2);
  if (!(dec.E_m0 == 0) || !(dec.E_m2 == 0))
    throw verification_error("build_E: recentered kernel moments are nonzero");
  return dec;
}

FTable build_f(const Decomposition& dec, const GSeries& g,
               const GreenEvaluator& green, int box_radius, Exec exec) {
  const int d = dec.d;
  if (g.params.d != d || green.dim() != d)
    throw argument_error("build_f: dimension mismatch");
  if (box_radius < 0) throw argument_error("build_f: bad box radius");
  if (box_radius < 2 * dec.E.support_radius_l1())
    throw argument_error(
        "build_f: box too small, need radius >= twice the kernel support "
        "radius (" +
        std::to_string(2 * dec.E.support_radius_l1()) + ")");
  if (std::fabs(green.mu() - to_double(dec.mu)) > 1e-12)
    throw argument_error("build_f: Green evaluator mass does not match mu_z");

  FTable out;
  out.z = dec.z;
  out.box = box_radius;
  const SpatialSeries G_z = g.series.evaluated_at(dec.z);
  const double lambda = to_double(dec.lambda);
  const auto box = reps_linf_ball(d, box_radius);

  for (const auto& x : box)
    out.max_abs_G =
        std::max(out.max_abs_G, std::fabs(to_double(G_z.coeff(x, 0))));

  if (dec.E.empty()) {
    out.exact_zero = true;
    const auto ctab = green.table(box, exec);
    for (const auto& x : box) {
      out.f[x] = 0.0;
      out.residual[x] = to_double(G_z.coeff(x, 0)) - lambda * ctab.at(x);
    }
    for (const auto& [x, r] : out.residual)
      out.max_abs_residual = std::max(out.max_abs_residual, std::fabs(r));
    return out;
  }

  // S := (delta - mu*Omega*D) * G_z - lambda*delta, exactly; then
  // f = C_{mu} * S so that G - lambda C - f is pure quadrature error.
  const Rational mu_omega = dec.mu * Rational(2 * d);
  const SpatialSeries A =
      delta_series(d, 0) - step_distribution(d).scaled(mu_omega);
  SpatialSeries S = convolve(A, G_z, exec) -
                    delta_series(d, 0).scaled(dec.lambda);
  S.prune_zeros();

  const auto s_pts = S.expanded_support();
  const int reach = box_radius + S.support_radius_l1();
  const auto ctab = green.table(reps_linf_ball(d, reach), exec);

  std::vector<double> fv(box.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(box.size()); ++i) {
    const LatticePoint& x = box[std::size_t(i)];
    double acc = 0;
    for (const auto& [y, poly] : s_pts)
      acc += to_double(poly->coeff(0)) *
             ctab.at(orbit_representative(x - y));
    fv[std::size_t(i)] = acc;
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    const LatticePoint& x = box[i];
    out.f[x] = fv[i];
    out.residual[x] =
        to_double(G_z.coeff(x, 0)) - lambda * ctab.at(x) - fv[i];
  }
  for (const auto& [x, r] : out.residual)
    out.max_abs_residual = std::max(out.max_abs_residual, std::fabs(r));
  return out;
}

BootstrapReport bootstrap_b(const GSeries& g, double z, int box_radius,
                            GreenConfig cfg, Exec exec) {
  const int d = g.params.d;
  if (box_radius < 0) throw argument_error("bootstrap_b: bad box radius");
  const GreenEvaluator green(d, 1.0 / (2.0 * d), cfg);
  const auto box = reps_linf_ball(d, box_radius);
  const auto ctab = green.table(box, exec);

  BootstrapReport rep;
  rep.z = z;
  rep.box = box_radius;
  bool first = true;
  for (const auto& x : box) {
    const double num = g.series.value_at(x).eval_double(z);
    const double ratio = num / ctab.at(x);
    if (first || ratio > rep.b) {
      rep.b = ratio;
      rep.argmax = x;
      first = false;
    }
  }
  rep.on_boundary = rep.argmax.linf() == box_radius;
  return rep;
}

ZcEstimate zc_estimate(const ZPolynomial& chi, int d) {
  const int N = chi.order();
  int nonzero = 0;
  for (int n = 0; n <= N; ++n)
    if (!(chi.coeff(n) == 0)) ++nonzero;
  if (nonzero < 6)
    throw argument_error(
        "zc_estimate: needs at least 6 susceptibility coefficients");
  for (int n = 0; n <= N; ++n)
    if (!(chi.coeff(n) > 0))
      throw argument_error("zc_estimate: susceptibility must be positive");

  ZcEstimate est;
  for (int n = 1; n <= N; ++n)
    est.ratios.push_back(to_double(chi.coeff(n - 1) / chi.coeff(n)));

  // The lattice is bipartite, so the ratio sequence oscillates with the
  // parity of n; Aitken acceleration therefore uses same-parity triples
  // (stride 2), the standard ratio-method treatment on loose-packed
  // lattices.  This is also why at least six coefficients are required.
  const auto& r = est.ratios;
  for (std::size_t n = 4; n < r.size(); ++n) {
    const double d1 = r[n] - r[n - 2];
    const double d2 = d1 - (r[n - 2] - r[n - 4]);
    if (std::fabs(d2) <= 1e-14 * std::max(1.0, std::fabs(r[n])))
      est.accels.push_back(r[n]);
    else
      est.accels.push_back(r[n] - d1 * d1 / d2);
  }

  const auto& a = est.accels;
  est.zc = a.back();
  // spread of the trailing accelerated values around the estimate; with a
  // single accelerated value, the size of the acceleration step itself
  double err = 0.0;
  if (a.size() == 1) {
    err = std::fabs(r.back() - est.zc);
  } else {
    const std::size_t lo = a.size() >= 3 ? a.size() - 3 : 0;
    for (std::size_t j = lo; j < a.size(); ++j)
      err = std::max(err, std::fabs(a[j] - est.zc));
  }
  est.error_bar = err;
  est.ge_free_bound = est.zc >= 1.0 / (2.0 * d) - 1e-6;
  return est;
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [rr, vv] : pts) {
    if (!(rr > 0)) continue;
    const double av = std::fabs(vv);
    if (!(av > 0)) continue;
    const double x = std::log(rr), y = std::log(av);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) throw argument_error("decay_fit: needs at least 3 usable points");
  const double den = n * sxx - sx * sx;
  if (den == 0) throw argument_error("decay_fit: degenerate abscissae");
  DecayFit fit;
  fit.n_used = n;
  fit.exponent = (n * sxy - sx * sy) / den;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.amplitude = std::exp(intercept);
  double ss = 0;
  for (const auto& [rr, vv] : pts) {
    if (!(rr > 0)) continue;
    const double av = std::fabs(vv);
    if (!(av > 0)) continue;
    const double resid =
        std::log(av) - (intercept + fit.exponent * std::log(rr));
    ss += resid * resid;
  }
  if (n > 2) {
    const double s2 = ss / (n - 2);
    fit.stderr_slope = std::sqrt(s2 * n / den);
  }
  return fit;
}

Rational round_to_millionths(double x) {
  const double scaled = x * 1e6;
  if (!(std::fabs(scaled) < 9.2e18))
    throw argument_error("round_to_millionths: out of range");
  const long num = std::lround(scaled);
  Rational q(num, 1000000L);
  q.canonicalize();
  return q;
}

}  // namespace wsaw
