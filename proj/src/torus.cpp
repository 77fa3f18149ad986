#include "wsaw/torus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <utility>

#include "wsaw/errors.hpp"

namespace wsaw {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

constexpr std::uint64_t kFactorial[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

double ipow(double v, int a) {
  double p = 1.0;
  for (int i = 0; i < a; ++i) p *= v;
  return p;
}

// permanent of a d x d row-major matrix by Ryser's formula with Gray-code
// column updates
double perm_ryser(const double* A, int d) {
  double rowsum[LatticePoint::kMaxDim] = {};
  double total = 0.0;
  unsigned gray = 0;
  const unsigned full = 1u << d;
  for (unsigned s = 1; s < full; ++s) {
    const unsigned g = s ^ (s >> 1);
    const unsigned diff = g ^ gray;
    const int c = std::countr_zero(diff);
    const double sgn = (g & diff) ? 1.0 : -1.0;
    for (int j = 0; j < d; ++j) rowsum[j] += sgn * A[j * d + c];
    gray = g;
    double p = rowsum[0];
    for (int j = 1; j < d; ++j) p *= rowsum[j];
    total += (std::popcount(g) & 1u) ? p : -p;
  }
  return (d & 1) ? total : -total;
}

void check_alpha(int d, const MultiIndex& alpha) {
  if (alpha.dim() != d) throw argument_error("multi-index dimension mismatch");
  for (int j = 0; j < d; ++j)
    if (alpha[j] < 0 || alpha[j] > 6)
      throw argument_error("multi-index entries must lie in [0, 6]");
}

std::vector<std::vector<int>> partitions_of(int a, int max_parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int cap) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    if (int(cur.size()) == max_parts) return;
    for (int p = std::min(rem, cap); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, a, a);
  return out;
}

struct LinFit {
  double slope = 0;
  double intercept = 0;
};
LinFit fit_loglog(const std::vector<ShellValue>& pts, double r_min) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : pts) {
    if (p.value <= 0 || p.r < r_min) continue;
    const double x = std::log(p.r), y = std::log(p.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return {};
  const double den = n * sxx - sx * sx;
  if (den == 0) return {};
  LinFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

}  // namespace

TorusPoint::TorusPoint(const std::vector<double>& v) : d(int(v.size())) {
  if (d < 1 || d > LatticePoint::kMaxDim)
    throw argument_error("torus point dimension out of range");
  for (int j = 0; j < d; ++j) k[std::size_t(j)] = v[std::size_t(j)];
}

double TorusPoint::norm2() const {
  double s = 0;
  for (int j = 0; j < d; ++j) s += k[std::size_t(j)] * k[std::size_t(j)];
  return s;
}

double dhat(int d, const TorusPoint& k) {
  if (k.d != d) throw argument_error("dhat: dimension mismatch");
  double s = 0;
  for (int j = 0; j < d; ++j) s += std::cos(k[j]);
  return s / d;
}

HatEvaluator::HatEvaluator(const SpatialSeries& s, double z) : d_(s.dim()) {
  if (d_ < 1) throw argument_error("hat evaluator: empty series");
  if (!s.orbit_reduced())
    throw argument_error("hat evaluator: expects orbit-reduced input");
  for (const auto& [rep, poly] : s.entries()) {
    const double val = poly.eval_double(z);
    if (val == 0.0) continue;
    if (rep.linf() > 63)
      throw argument_error("hat evaluator: support radius exceeds 63");
    const std::uint64_t osz = orbit_size(rep);
    Entry e;
    e.v.fill(0);
    for (int j = 0; j < d_; ++j) {
      e.v[std::size_t(j)] = int(rep[j]);
      vmax_ = std::max(vmax_, int(rep[j]));
    }
    e.hw = val * (double(osz) / double(kFactorial[d_]));
    entries_.push_back(e);
    hat0_ += val * double(osz);
    for (const auto& x : expand_orbit(rep)) full_.emplace_back(x, val);
  }
}

double HatEvaluator::eval(const TorusPoint& k) const {
  return deriv(k, MultiIndex(d_));
}

double HatEvaluator::deriv(const TorusPoint& k, const MultiIndex& alpha) const {
  if (k.d != d_) throw argument_error("hat evaluator: dimension mismatch");
  check_alpha(d_, alpha);
  if (entries_.empty()) return 0.0;

  double ct[LatticePoint::kMaxDim][64];
  double st[LatticePoint::kMaxDim][64];
  for (int j = 0; j < d_; ++j)
    for (int v = 0; v <= vmax_; ++v) {
      ct[j][v] = std::cos(k[j] * v);
      st[j][v] = std::sin(k[j] * v);
    }

  int total = 0, nodd = 0;
  for (int j = 0; j < d_; ++j) {
    total += int(alpha[j]);
    nodd += int(alpha[j]) & 1;
  }
  const double sign = (((total + nodd) / 2) & 1) ? -1.0 : 1.0;

  double acc = 0.0;
  double A[LatticePoint::kMaxDim * LatticePoint::kMaxDim];
  for (const Entry& e : entries_) {
    for (int j = 0; j < d_; ++j) {
      const int a = int(alpha[j]);
      const double* base = (a & 1) ? st[j] : ct[j];
      for (int c = 0; c < d_; ++c) {
        const int v = e.v[std::size_t(c)];
        A[j * d_ + c] = ipow(double(v), a) * base[v];
      }
    }
    acc += e.hw * perm_ryser(A, d_);
  }
  return sign * acc;
}

double HatEvaluator::deriv_direct(const TorusPoint& k,
                                  const MultiIndex& alpha) const {
  if (k.d != d_) throw argument_error("hat evaluator: dimension mismatch");
  check_alpha(d_, alpha);
  int total = 0;
  for (int j = 0; j < d_; ++j) total += int(alpha[j]);
  double acc = 0.0;
  for (const auto& [x, val] : full_) {
    double phase = 0.0, mono = 1.0;
    for (int j = 0; j < d_; ++j) {
      phase += k[j] * double(x[j]);
      mono *= ipow(double(x[j]), int(alpha[j]));
    }
    double trig = 0.0;
    switch (total & 3) {
      case 0: trig = std::cos(phase); break;
      case 1: trig = -std::sin(phase); break;
      case 2: trig = -std::cos(phase); break;
      case 3: trig = std::sin(phase); break;
    }
    acc += val * mono * trig;
  }
  return acc;
}

double HatEvaluator::deriv_fd(const TorusPoint& k, const MultiIndex& alpha,
                              double h) const {
  if (k.d != d_) throw argument_error("hat evaluator: dimension mismatch");
  check_alpha(d_, alpha);
  int total = 0;
  for (int j = 0; j < d_; ++j) total += int(alpha[j]);
  if (total == 0) return eval(k);
  if (h <= 0) h = std::pow(2.2e-16, 1.0 / (total + 2));

  using Stencil = std::vector<std::pair<int, double>>;
  static const Stencil stencils[5] = {
      {{0, 1.0}},
      {{1, 0.5}, {-1, -0.5}},
      {{1, 1.0}, {0, -2.0}, {-1, 1.0}},
      {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}},
      {{2, 1.0}, {1, -4.0}, {0, 6.0}, {-1, -4.0}, {-2, 1.0}},
  };
  for (int j = 0; j < d_; ++j)
    if (alpha[j] > 4)
      throw argument_error("finite differences support axis order <= 4");

  std::vector<int> axes;
  for (int j = 0; j < d_; ++j)
    if (alpha[j] > 0) axes.push_back(j);

  double acc = 0.0;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    TorusPoint kk = k;
    double w = 1.0;
    for (std::size_t t = 0; t < axes.size(); ++t) {
      const auto& [off, c] = stencils[alpha[axes[t]]][idx[t]];
      kk[axes[t]] += off * h;
      w *= c;
    }
    acc += w * eval(kk);
    std::size_t t = 0;
    while (t < axes.size()) {
      if (++idx[t] < stencils[alpha[axes[t]]].size()) break;
      idx[t] = 0;
      ++t;
    }
    if (t == axes.size()) break;
  }
  return acc / std::pow(h, double(total));
}

std::vector<GridPoint> reduced_grid(int d, int L) {
  if (d < 1 || d > LatticePoint::kMaxDim)
    throw argument_error("reduced_grid: dimension out of range");
  if (L < 2 || (L % 2) != 0)
    throw argument_error("reduced_grid: L must be even and >= 2");
  const int half = L / 2;
  std::vector<GridPoint> out;
  for (const auto& m : reps_linf_ball(d, half)) {
    std::uint64_t perms = kFactorial[d];
    int run = 1;
    for (int j = 1; j <= d; ++j) {
      if (j < d && m[j] == m[j - 1]) {
        ++run;
        continue;
      }
      perms /= kFactorial[run];
      run = 1;
    }
    int interior = 0;
    for (int j = 0; j < d; ++j)
      if (m[j] > 0 && m[j] < half) ++interior;
    out.push_back({m, perms << interior});
  }
  return out;
}

TorusPoint grid_k(int d, int L, const LatticePoint& m) {
  TorusPoint k(d);
  for (int j = 0; j < d; ++j) k[j] = kTwoPi * double(m[j]) / double(L);
  return k;
}

InfraredScan infrared_scan(const PiSeries& pi, double z, int L, Exec exec) {
  const int d = pi.pi.dim();
  const HatEvaluator pih(pi.pi, z);
  const double zw = z * 2.0 * d;
  const auto grid = reduced_grid(d, L);

  std::vector<double> fv(grid.size()), ratio(grid.size());
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(grid.size()); ++i) {
    const auto& gp = grid[std::size_t(i)];
    if (gp.m.is_origin()) {
      fv[std::size_t(i)] = 0;
      ratio[std::size_t(i)] = 0;
      continue;
    }
    const TorusPoint k = grid_k(d, L, gp.m);
    const double F = 1.0 - zw * dhat(d, k) - pih.eval(k);
    fv[std::size_t(i)] = F;
    ratio[std::size_t(i)] = F / k.norm2();
  }

  InfraredScan scan;
  scan.L = L;
  scan.z = z;
  scan.F0 = 1.0 - zw - pih.value_sum();
  bool first = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].m.is_origin()) continue;
    if (first || ratio[i] < scan.c_est) {
      scan.c_est = ratio[i];
      scan.argmin_m = grid[i].m;
      scan.argmin_k = grid_k(d, L, grid[i].m);
    }
    if (first || fv[i] < scan.min_F) scan.min_F = fv[i];
    first = false;
  }
  scan.positive = scan.min_F > 0;
  return scan;
}

InfraredScan infrared_scan_reference(const PiSeries& pi, double z, int L) {
  const int d = pi.pi.dim();
  if (std::pow(double(L), d) > 2e7)
    throw resource_error("full-grid reference scan is for small grids only");
  const HatEvaluator pih(pi.pi, z);
  const double zw = z * 2.0 * d;

  InfraredScan scan;
  scan.L = L;
  scan.z = z;
  scan.F0 = 1.0 - zw - pih.value_sum();
  const int lo = -L / 2 + 1, hi = L / 2;
  std::vector<int> t(std::size_t(d), lo);
  bool first = true;
  for (;;) {
    bool zero = true;
    for (int j = 0; j < d; ++j) zero = zero && t[std::size_t(j)] == 0;
    if (!zero) {
      TorusPoint k(d);
      for (int j = 0; j < d; ++j)
        k[j] = kTwoPi * double(t[std::size_t(j)]) / double(L);
      const double F = 1.0 - zw * dhat(d, k) - pih.deriv_direct(k, MultiIndex(d));
      const double r = F / k.norm2();
      if (first || r < scan.c_est) scan.c_est = r;
      if (first || F < scan.min_F) scan.min_F = F;
      first = false;
    }
    int j = 0;
    while (j < d) {
      if (++t[std::size_t(j)] <= hi) break;
      t[std::size_t(j)] = lo;
      ++j;
    }
    if (j == d) break;
  }
  scan.positive = scan.min_F > 0;
  return scan;
}

FourierIdentityCheck fourier_identity_check(const GSeries& g,
                                            const SpatialSeries& F, double z,
                                            int L, Exec exec) {
  const int d = g.params.d;
  const int N = g.series.order();
  if (F.dim() != d || F.order() != N)
    throw argument_error("fourier identity: mismatched series");

  auto retag = [](const SpatialSeries& s, int order2) {
    SpatialSeries out(s.dim(), order2);
    for (const auto& [p, poly] : s.entries()) {
      ZPolynomial q(order2);
      for (int n = 0; n <= s.order(); ++n) q.set_coeff(n, poly.coeff(n));
      out.set(p, q);
    }
    out.set_walk_support(s.walk_support());
    return out;
  };
  const SpatialSeries H2 =
      convolve(retag(g.series, 2 * N), retag(F, 2 * N), exec);

  FourierIdentityCheck chk;
  chk.L = L;
  const double az = std::fabs(z);
  for (int n = N + 1; n <= 2 * N; ++n) {
    double l1 = 0;
    for (const auto& [p, poly] : H2.entries())
      l1 += double(orbit_size(p)) * std::fabs(to_double(poly.coeff(n)));
    chk.tail_bound += std::pow(az, n) * l1;
  }

  const HatEvaluator gh(g.series, z);
  const HatEvaluator fh(F, z);
  const auto grid = reduced_grid(d, L);
  std::vector<double> res(grid.size());
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(grid.size()); ++i) {
    const TorusPoint k = grid_k(d, L, grid[std::size_t(i)].m);
    res[std::size_t(i)] = std::fabs(gh.eval(k) * fh.eval(k) - 1.0);
  }
  for (double r : res) chk.max_residual = std::max(chk.max_residual, r);
  return chk;
}

std::vector<TorusPoint> make_directions(int d, int n_random,
                                        std::uint64_t seed) {
  std::vector<TorusPoint> dirs;
  for (int j = 0; j < d; ++j) {
    TorusPoint e(d);
    e[j] = 1.0;
    dirs.push_back(e);
  }
  {
    TorusPoint diag(d);
    const double v = 1.0 / std::sqrt(double(d));
    for (int j = 0; j < d; ++j) diag[j] = v;
    dirs.push_back(diag);
  }
  std::mt19937_64 rng(seed);
  int accepted = 0;
  while (accepted < n_random) {
    TorusPoint p(d);
    double n2 = 0;
    for (int j = 0; j < d; ++j) {
      const double u = double(rng() >> 11) * 0x1p-53 * 2.0 - 1.0;
      p[j] = u;
      n2 += u * u;
    }
    if (n2 > 1.0 || n2 < 0.01) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (int j = 0; j < d; ++j) p[j] *= inv;
    dirs.push_back(p);
    ++accepted;
  }
  return dirs;
}

std::vector<ShellValue> shell_max(
    const std::vector<double>& radii, const std::vector<TorusPoint>& dirs,
    const std::function<double(const TorusPoint&)>& f) {
  std::vector<ShellValue> out;
  for (double r : radii) {
    double worst = 0;
    for (const auto& dir : dirs) {
      TorusPoint k = dir;
      for (int j = 0; j < k.d; ++j) k[j] *= r;
      worst = std::max(worst, std::fabs(f(k)));
    }
    out.push_back({r, worst});
  }
  return out;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2)
    throw argument_error("log_spaced: bad range");
  std::vector<double> out;
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i)
    out.push_back(std::exp(la + (lb - la) * i / (n - 1)));
  return out;
}

EhatScalingAudit ehat_scaling_audit(const SpatialSeries& E,
                                    const EhatScalingConfig& cfg) {
  const int d = E.dim();
  const HatEvaluator eh(E, 0.0);
  const auto radii = log_spaced(cfg.r_min, cfg.r_max, cfg.n_radii);
  const auto dirs = make_directions(d, cfg.n_random_dirs, cfg.seed);

  EhatScalingAudit audit;
  for (int a = 0; a <= cfg.max_order; ++a) {
    std::vector<MultiIndex> alphas;
    for (const auto& pat : partitions_of(a, d)) {
      std::vector<Coord> cs(static_cast<std::size_t>(d), 0);
      for (std::size_t i = 0; i < pat.size(); ++i) cs[i] = Coord(pat[i]);
      alphas.push_back(MultiIndex(cs));
    }
    auto f = [&](const TorusPoint& k) {
      double worst = 0;
      for (const auto& alpha : alphas)
        worst = std::max(worst, std::fabs(eh.deriv(k, alpha)));
      return worst;
    };
    OrderFit fit;
    fit.order = a;
    fit.shells = shell_max(radii, dirs, f);
    const LinFit lf = fit_loglog(fit.shells, cfg.fit_r_min);
    fit.slope = lf.slope;
    fit.amplitude = (lf.slope == 0 && lf.intercept == 0) ? 0 : std::exp(lf.intercept);
    audit.fits.push_back(std::move(fit));
  }
  return audit;
}

double chat_deriv(int d, double mu, const TorusPoint& k,
                  const MultiIndex& alpha) {
  if (k.d != d) throw argument_error("chat_deriv: dimension mismatch");
  check_alpha(d, alpha);
  const double c = mu * 2.0 * d;
  if (!(c >= 0) || c >= 1.0)
    throw argument_error("chat_deriv: requires mu*Omega < 1");

  std::vector<int> axes;
  int total = 0;
  for (int j = 0; j < d; ++j) {
    total += int(alpha[j]);
    for (int t = 0; t < int(alpha[j]); ++t) axes.push_back(j);
  }
  if (total > 3)
    throw argument_error("chat_deriv: supports derivative order <= 3");

  const double u = 1.0 - c * dhat(d, k);
  auto u1 = [&](int i) { return c * std::sin(k[i]) / d; };
  auto u2 = [&](int i, int j) {
    return i == j ? c * std::cos(k[i]) / d : 0.0;
  };
  auto u3 = [&](int i, int j, int l) {
    return (i == j && j == l) ? -c * std::sin(k[i]) / d : 0.0;
  };

  switch (total) {
    case 0:
      return 1.0 / u;
    case 1:
      return -u1(axes[0]) / (u * u);
    case 2: {
      const int i = axes[0], j = axes[1];
      return -u2(i, j) / (u * u) + 2.0 * u1(i) * u1(j) / (u * u * u);
    }
    default: {
      const int i = axes[0], j = axes[1], l = axes[2];
      const double uu = u * u;
      return -u3(i, j, l) / uu +
             2.0 * (u2(i, j) * u1(l) + u2(i, l) * u1(j) + u2(j, l) * u1(i)) /
                 (uu * u) -
             6.0 * u1(i) * u1(j) * u1(l) / (uu * uu);
    }
  }
}

FhatL1Audit fhat_l1_audit(const SpatialSeries& E, const GSeries& g, double z,
                          double mu, int L, int max_order, Exec exec) {
  const int d = E.dim();
  if (g.params.d != d) throw argument_error("fhat audit: dimension mismatch");
  if (max_order < 0 || max_order > 3)
    throw argument_error("fhat audit: max_order must lie in [0, 3]");
  const HatEvaluator eh(E, 0.0);
  const HatEvaluator gh(g.series, z);

  // all multi-indices with |alpha| <= max_order
  std::vector<MultiIndex> alphas;
  std::vector<int> code_to_idx(std::size_t(1) << (2 * LatticePoint::kMaxDim),
                               -1);
  auto encode = [&](const MultiIndex& a) {
    std::size_t c = 0;
    for (int j = 0; j < d; ++j) c |= std::size_t(a[j]) << (2 * j);
    return c;
  };
  {
    std::vector<Coord> cur(static_cast<std::size_t>(d), 0);
    auto rec = [&](auto&& self, int j, int rem) -> void {
      if (j == d) {
        MultiIndex a(cur);
        code_to_idx[encode(a)] = int(alphas.size());
        alphas.push_back(a);
        return;
      }
      for (int v = 0; v <= rem; ++v) {
        cur[std::size_t(j)] = Coord(v);
        self(self, j + 1, rem - v);
      }
      cur[std::size_t(j)] = 0;
    };
    rec(rec, 0, max_order);
  }
  const std::size_t na = alphas.size();

  // rows: one per partition pattern; assignments: indices of the alphas
  // whose sorted nonzero entries equal the pattern
  struct Row {
    std::vector<int> pattern;
    std::vector<int> assignment_idx;
  };
  std::vector<Row> rows;
  for (int a = 0; a <= max_order; ++a)
    for (const auto& pat : partitions_of(a, d)) {
      Row row;
      row.pattern = pat;
      for (std::size_t i = 0; i < na; ++i) {
        std::vector<int> nz;
        for (int j = 0; j < d; ++j)
          if (alphas[i][j] > 0) nz.push_back(int(alphas[i][j]));
        std::sort(nz.begin(), nz.end(), std::greater<int>());
        if (nz == pat) row.assignment_idx.push_back(int(i));
      }
      rows.push_back(std::move(row));
    }

  // per-axis split enumeration for the three-factor product rule,
  // precomputed per alpha as (idx1, idx2, idx3, multinomial weight)
  struct Term {
    int i1, i2, i3;
    double w;
  };
  std::vector<std::vector<Term>> leibniz(na);
  {
    auto binom = [](int n, int r) {
      double b = 1;
      for (int t = 1; t <= r; ++t) b = b * (n - r + t) / t;
      return b;
    };
    for (std::size_t i = 0; i < na; ++i) {
      const MultiIndex& a = alphas[i];
      std::vector<Coord> a1(static_cast<std::size_t>(d), 0),
          a2(static_cast<std::size_t>(d), 0), a3(static_cast<std::size_t>(d), 0);
      auto rec = [&](auto&& self, int j, double w) -> void {
        if (j == d) {
          leibniz[i].push_back({code_to_idx[encode(MultiIndex(a1))],
                                code_to_idx[encode(MultiIndex(a2))],
                                code_to_idx[encode(MultiIndex(a3))], w});
          return;
        }
        const int aj = int(a[j]);
        for (int x = 0; x <= aj; ++x)
          for (int y = 0; y + x <= aj; ++y) {
            a1[std::size_t(j)] = Coord(x);
            a2[std::size_t(j)] = Coord(y);
            a3[std::size_t(j)] = Coord(aj - x - y);
            self(self, j + 1, w * binom(aj, x) * binom(aj - x, y));
          }
        a1[std::size_t(j)] = a2[std::size_t(j)] = a3[std::size_t(j)] = 0;
      };
      rec(rec, 0, 1.0);
    }
  }

  const auto grid = reduced_grid(d, L);
  std::vector<double> acc(grid.size() * rows.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
  for (std::ptrdiff_t gi = 0; gi < std::ptrdiff_t(grid.size()); ++gi) {
    const TorusPoint k = grid_k(d, L, grid[std::size_t(gi)].m);
    std::vector<double> dc(na), de(na), dg(na);
    for (std::size_t i = 0; i < na; ++i) {
      dc[i] = chat_deriv(d, mu, k, alphas[i]);
      de[i] = eh.deriv(k, alphas[i]);
      dg[i] = gh.deriv(k, alphas[i]);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double mean = 0;
      for (int ai : rows[r].assignment_idx) {
        double v = 0;
        for (const Term& t : leibniz[std::size_t(ai)])
          v += t.w * dc[std::size_t(t.i1)] * de[std::size_t(t.i2)] *
               dg[std::size_t(t.i3)];
        mean += std::fabs(v);
      }
      mean /= double(rows[r].assignment_idx.size());
      acc[std::size_t(gi) * rows.size() + r] = mean;
    }
  }

  FhatL1Audit audit;
  audit.L = L;
  const double cells = std::pow(double(L), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double sum = 0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi)
      sum += double(grid[gi].weight) * acc[gi * rows.size() + r];
    FhatL1Row row;
    row.pattern = rows[r].pattern;
    row.l1_mean = sum / cells;
    audit.rows.push_back(std::move(row));
  }
  return audit;
}

}  // namespace wsaw
