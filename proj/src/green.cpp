#include "wsaw/green.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "wsaw/errors.hpp"

namespace wsaw {

namespace {

constexpr int kMaxBesselOrder = 63;

void disable_gsl_abort() {
  static const gsl_error_handler_t* old = gsl_set_error_handler_off();
  (void)old;
}

// integrand upper bound at time t (product of scaled Bessels is at most
// min(1, (pi d / (8 u))^{d/2}) since e^{-u} I_0(u) <= sqrt(pi/(8u))).
double tail_bound(int d, double c, double T) {
  if (c <= 0) return std::exp(-T);
  const double decay = 1.0 - c;
  double env = 1.0;
  const double u = c * T / d;
  if (u > 0) env = std::min(1.0, std::pow(M_PI / (8.0 * u), 0.5 * d));
  if (decay > 0) return env * std::exp(-decay * T) / decay;
  // massless point: integrate the power envelope (d >= 3)
  const double p = 0.5 * d - 1.0;
  return std::pow(M_PI * d / (8.0 * c), 0.5 * d) * std::pow(T, -p) / p;
}

// The massless integrand decays only like t^{-d/2}, so quadrature out to
// where the raw tail drops below tolerance would need t ~ 1e20 and drown
// in Bessel roundoff.  Instead the tail from a moderate switch time is
// integrated in closed form through the uniform large-u expansion
//   e^{-u} I_nu(u) = (2 pi u)^{-1/2} (1 - q/(8u) + q(q-8)/(2(8u)^2) - ...),
// q = 4 nu^2 - 1.  The product over the d axes collapses: with
// S1 = sum_j (4 nu_j^2 - 1) the u^{-1} coefficient is -S1/8 and the u^{-2}
// coefficient is exactly S1(S1-8)/128, so the integrand at u = t/d is
//   (d/(2 pi t))^{d/2} (1 - S1 d/(8t) + S1(S1-8) d^2/(128 t^2)) + O(t^{-d/2-3}).

double axis_q_sum(const int* nu, int d) {
  double s = 0;
  for (int j = 0; j < d; ++j) s += 4.0 * nu[j] * nu[j] - 1.0;
  return s;
}

// closed-form integral over [T, infinity) of the asymptotic integrand
double massless_tail_integral(int d, double S1, double T) {
  const double amp = std::pow(d / (2.0 * M_PI), 0.5 * d);
  const double p = 0.5 * d;
  const double t0 = std::pow(T, 1.0 - p) / (p - 1.0);
  const double t1 = -S1 * d / 8.0 * std::pow(T, -p) / p;
  const double t2 =
      S1 * (S1 - 8.0) * d * d / 128.0 * std::pow(T, -p - 1.0) / (p + 1.0);
  return amp * (t0 + t1 + t2);
}

// switch time such that the dropped u^{-3} correction, integrated over the
// tail, stays below half of tol (factor 10 safety), and the expansion is
// used well inside its validity basin u >> nu^2
double massless_switch_time(int d, double S1, int numax, double tol) {
  const double amp = std::pow(d / (2.0 * M_PI), 0.5 * d);
  const double p = 0.5 * d;
  const double K3 =
      std::fabs(S1 * (S1 - 8.0) * (S1 - 24.0)) / 3072.0 + 1.0;
  const double T_err = std::pow(
      10.0 * amp * K3 * std::pow(double(d), 3) / ((p + 2.0) * 0.5 * tol),
      1.0 / (p + 2.0));
  const double T_valid = double(d) * (2.0 * numax * double(numax) + 30.0);
  return std::max({T_err, T_valid, 64.0});
}

}  // namespace

GreenEvaluator::GreenEvaluator(int d, double mu, GreenConfig cfg)
    : d_(d), mu_(mu), cfg_(cfg) {
  disable_gsl_abort();
  if (d < 1 || d > LatticePoint::kMaxDim)
    throw argument_error("green: dimension out of range");
  if (!(mu >= 0)) throw argument_error("green: mu must be nonnegative");
  if (cfg_.abs_tol <= 0) throw argument_error("green: abs_tol must be positive");
  c_ = mu * 2.0 * d;
  if (std::fabs(c_ - 1.0) < 1e-12) c_ = 1.0;
  if (c_ > 1.0)
    throw argument_error("green: mu*Omega exceeds the radius of convergence");
  if (c_ == 1.0 && d < 3)
    throw argument_error("green: massless evaluation requires d >= 3");

  panel_edges_.push_back(0.0);
  double T = 1.0;
  if (c_ == 1.0) {
    // quadrature only up to the worst-case switch time over all supported
    // Bessel orders; each point stops at its own switch edge and adds the
    // closed-form tail
    const double S1w =
        d_ * (4.0 * kMaxBesselOrder * double(kMaxBesselOrder) - 1.0);
    const double T_stop =
        massless_switch_time(d_, S1w, kMaxBesselOrder, cfg_.abs_tol);
    while (T < T_stop) {
      panel_edges_.push_back(T);
      T *= 2.0;
    }
    panel_edges_.push_back(T);
  } else {
    while (tail_bound(d_, c_, T) >= 0.5 * cfg_.abs_tol) {
      panel_edges_.push_back(T);
      T *= 2.0;
      if (panel_edges_.size() > 1024)
        throw numeric_error("green: tail bound not reachable");
    }
    panel_edges_.push_back(T);
  }
}

double GreenEvaluator::integrand(double t, const int* nu, int numax) const {
  const double u = c_ * t / d_;
  if (u <= 0) {
    return numax == 0 ? std::exp(-t) : 0.0;
  }
  double buf[kMaxBesselOrder + 1];
  if (numax == 0) {
    buf[0] = gsl_sf_bessel_I0_scaled(u);
  } else {
    if (gsl_sf_bessel_In_scaled_array(0, numax, u, buf) != GSL_SUCCESS)
      return 0.0;
  }
  double prod = 1.0;
  for (int j = 0; j < d_; ++j) prod *= buf[nu[j]];
  if (prod == 0.0) return 0.0;
  const double decay = (1.0 - c_) * t;
  return prod * std::exp(-decay);
}

double GreenEvaluator::panel(double a, double b, double fa, double fm,
                             double fb, double s, double tol, int depth,
                             const int* nu, int numax) const {
  const double m = 0.5 * (a + b);
  const double fl = integrand(0.5 * (a + m), nu, numax);
  const double fr = integrand(0.5 * (m + b), nu, numax);
  const double sl = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
  const double sr = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
  const double s2 = sl + sr;
  const double err = s2 - s;
  if (std::fabs(err) <= 15.0 * tol ||
      std::fabs(err) <= 4e-16 * (std::fabs(s2) + std::fabs(s)) ||
      depth >= cfg_.max_levels)
    return s2 + err / 15.0;
  return panel(a, m, fa, fl, fm, sl, 0.5 * tol, depth + 1, nu, numax) +
         panel(m, b, fm, fr, fb, sr, 0.5 * tol, depth + 1, nu, numax);
}

double GreenEvaluator::operator()(const LatticePoint& x) const {
  if (x.dim() != d_) throw argument_error("green: dimension mismatch");
  int nu[LatticePoint::kMaxDim] = {};
  int numax = 0;
  for (int j = 0; j < d_; ++j) {
    nu[j] = std::abs(int(x[j]));
    numax = std::max(numax, nu[j]);
  }
  if (numax > kMaxBesselOrder)
    throw argument_error("green: coordinate exceeds supported Bessel order");
  if (c_ == 0.0) return numax == 0 ? 1.0 : 0.0;

  std::size_t npanels = panel_edges_.size() - 1;
  double total = 0.0;
  if (c_ == 1.0) {
    const double S1 = axis_q_sum(nu, d_);
    const double T_sw = massless_switch_time(d_, S1, numax, cfg_.abs_tol);
    const auto it = std::lower_bound(panel_edges_.begin() + 1,
                                     panel_edges_.end(), T_sw);
    npanels = std::min(npanels,
                       std::size_t(it - panel_edges_.begin()));
    total = massless_tail_integral(d_, S1, panel_edges_[npanels]);
  }
  const double tol_p = 0.5 * cfg_.abs_tol / double(npanels);
  for (std::size_t i = 0; i < npanels; ++i) {
    const double a = panel_edges_[i];
    const double b = panel_edges_[i + 1];
    const double fa = integrand(a, nu, numax);
    const double fm = integrand(0.5 * (a + b), nu, numax);
    const double fb = integrand(b, nu, numax);
    const double s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += panel(a, b, fa, fm, fb, s, tol_p, 0, nu, numax);
  }
  return total;
}

std::map<LatticePoint, double> GreenEvaluator::table(
    const std::vector<LatticePoint>& reps, Exec exec) const {
  std::vector<double> vals(reps.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(reps.size()); ++i)
    vals[std::size_t(i)] = (*this)(reps[std::size_t(i)]);
  std::map<LatticePoint, double> out;
  for (std::size_t i = 0; i < reps.size(); ++i) out[reps[i]] = vals[i];
  return out;
}

double amplitude_a_d(int d) {
  if (d < 3) throw argument_error("amplitude_a_d: requires d >= 3");
  return d * std::tgamma(0.5 * (d - 2)) / (2.0 * std::pow(M_PI, 0.5 * d));
}

double green_series_eval(int d, double mu, const LatticePoint& x, double tol) {
  if (d < 1 || x.dim() != d)
    throw argument_error("green_series_eval: dimension mismatch");
  const double c = mu * 2.0 * d;
  if (!(c >= 0) || c > 0.95 + 1e-12)
    throw argument_error("green_series_eval: requires 0 <= mu*Omega <= 0.95");
  if (c < 1e-300) return x.is_origin() ? 1.0 : 0.0;

  const int M = std::max(
      4, int(std::ceil(std::log(0.5 * tol * (1.0 - c)) / std::log(c))) + 1);
  std::vector<double> lg(std::size_t(M) + 2);
  for (std::size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(double(i) + 1.0);

  auto axis_marginal = [&](int xi) {
    std::vector<double> r(std::size_t(M) + 1, 0.0);
    const int a = std::abs(xi);
    for (int m = a; m <= M; ++m) {
      if ((m - a) % 2) continue;
      const int up = (m + a) / 2;
      r[std::size_t(m)] =
          std::exp(lg[std::size_t(m)] - lg[std::size_t(up)] -
                   lg[std::size_t(m - up)] - double(m) * std::log(2.0));
    }
    return r;
  };

  std::vector<double> R = axis_marginal(int(x[0]));
  for (int j = 1; j < d; ++j) {
    const std::vector<double> B = axis_marginal(int(x[j]));
    const double gamma = double(j) / double(j + 1);
    const double lga = std::log(gamma);
    const double lgb = std::log1p(-gamma);
    std::vector<double> out(std::size_t(M) + 1, 0.0);
    for (int m = 0; m <= M; ++m) {
      double s = 0.0;
      for (int a = 0; a <= m; ++a) {
        const double ra = R[std::size_t(a)];
        if (ra == 0.0) continue;
        const double rb = B[std::size_t(m - a)];
        if (rb == 0.0) continue;
        const double w =
            std::exp(lg[std::size_t(m)] - lg[std::size_t(a)] -
                     lg[std::size_t(m - a)] + a * lga + (m - a) * lgb);
        s += w * ra * rb;
      }
      out[std::size_t(m)] = s;
    }
    R = std::move(out);
  }

  double total = 0.0;
  double zc = 1.0;
  for (int m = 0; m <= M; ++m) {
    total += zc * R[std::size_t(m)];
    zc *= c;
  }
  return total;
}

double green_d1_closed_form(double mu, long long x) {
  const double c = mu * 2.0;
  if (!(c >= 0) || c >= 1)
    throw argument_error("green_d1_closed_form: requires mu*Omega < 1");
  const double s = std::sqrt(1.0 - c * c);
  const double rho = c / (1.0 + s);
  return std::pow(rho, double(x < 0 ? -x : x)) / s;
}

double resolvent_residual(const GreenEvaluator& green, int box_radius,
                          Exec exec) {
  if (box_radius < 0) throw argument_error("resolvent_residual: bad radius");
  const int d = green.dim();
  const auto outer = reps_linf_ball(d, box_radius + 1);
  const auto table = green.table(outer, exec);
  const auto inner = reps_linf_ball(d, box_radius);
  const double mu = green.mu();

  std::vector<double> res(inner.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(inner.size()); ++i) {
    const LatticePoint& x = inner[std::size_t(i)];
    double nb = 0.0;
    for (int j = 0; j < d; ++j) {
      const LatticePoint e = unit_vector(d, j);
      nb += table.at(orbit_representative(x + e));
      nb += table.at(orbit_representative(x - e));
    }
    double r = table.at(x) - mu * nb;
    if (x.is_origin()) r -= 1.0;
    res[std::size_t(i)] = std::fabs(r);
  }
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, r);
  return worst;
}

std::vector<GreenAsymptoticRow> green_asymptotic_audit(int d, int max_radius) {
  if (d < 3) throw argument_error("green_asymptotic_audit: requires d >= 3");
  if (max_radius < 2)
    throw argument_error("green_asymptotic_audit: radius too small");
  const GreenEvaluator green(d, 1.0 / (2.0 * d));
  const double a_d = amplitude_a_d(d);

  std::vector<GreenAsymptoticRow> rows;
  for (int r = 1; r <= max_radius; ++r) {
    std::vector<Coord> cs(static_cast<std::size_t>(d), 0);
    cs[0] = Coord(r);
    const double v = green(LatticePoint(cs));
    const double absx = double(r);
    rows.push_back({"axis", absx, v, v * std::pow(absx, d - 2) / a_d});
  }
  const int mmax = std::max(1, int(std::floor(max_radius / std::sqrt(double(d)))));
  for (int m = 1; m <= mmax; ++m) {
    std::vector<Coord> cs(static_cast<std::size_t>(d), Coord(m));
    const double v = green(LatticePoint(cs));
    const double absx = m * std::sqrt(double(d));
    rows.push_back({"diagonal", absx, v, v * std::pow(absx, d - 2) / a_d});
  }
  return rows;
}

}  // namespace wsaw
