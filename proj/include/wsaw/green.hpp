#pragma once
// Green function of the killed nearest-neighbour random walk,
//   C_mu(x) = sum_{n>=0} (mu*Omega)^n D^{*n}(x),  Omega = 2d,
// evaluated through the product-of-Bessel integral
//   C_mu(x) = int_0^inf e^{-t} prod_j I_{x_j}(mu*Omega*t/d) dt.
// Scaled Bessels e^{-u} I_nu(u) keep the integrand in [0,1]:
//   integrand(t) = e^{-(1-mu*Omega)t} prod_j [e^{-u} I_{x_j}(u)],
// with u = mu*Omega*t/d.  The quadrature uses dyadic panels
// [0,1],[1,2],[2,4],... with adaptive Simpson on each panel.  Below the
// massless point the analytic envelope e^{-(1-c)T} * min(1, (pi d/(8cT))^{d/2})
// decides where to stop.  At the massless point mu*Omega = 1 the integrand
// decays only like t^{-d/2} (convergent for d >= 3); panels then run to a
// moderate switch time and the remaining tail is integrated in closed form
// from the uniform large-order Bessel expansion (see src/green.cpp).

#include <map>
#include <vector>

#include "wsaw/lattice.hpp"
#include "wsaw/spatial_series.hpp"

namespace wsaw {

struct GreenConfig {
  double abs_tol = 1e-10;  // absolute error target per point
  int max_levels = 60;     // adaptive bisection depth cap per panel
};

class GreenEvaluator {
 public:
  GreenEvaluator(int d, double mu, GreenConfig cfg = {});

  int dim() const { return d_; }
  double mu() const { return mu_; }
  double mass() const { return c_; }  // mu * Omega, snapped to 1 if within 1e-12

  double operator()(const LatticePoint& x) const;

  std::map<LatticePoint, double> table(const std::vector<LatticePoint>& reps,
                                       Exec exec = Exec::parallel) const;

 private:
  double integrand(double t, const int* nu, int numax) const;
  double panel(double a, double b, double fa, double fm, double fb, double s,
               double tol, int depth, const int* nu, int numax) const;

  int d_ = 0;
  double mu_ = 0;
  double c_ = 0;
  GreenConfig cfg_;
  std::vector<double> panel_edges_;  // 0,1,2,4,...,T with analytic tail < tol/2
};

// d * Gamma((d-2)/2) / (2 pi^{d/2}): the |x|^{-(d-2)} amplitude of C_{1/Omega},
// defined for d >= 3.
double amplitude_a_d(int d);

// Independent summation route (no Bessel functions): per-axis binomial walk
// marginals merged with binomial mixing weights, summed over the step count
// with geometric tail bound.  Requires mu*Omega <= 0.95.
double green_series_eval(int d, double mu, const LatticePoint& x,
                         double tol = 1e-12);

// Closed form in one dimension: C(x) = rho^{|x|} / sqrt(1-c^2) with
// rho = c / (1 + sqrt(1-c^2)), c = mu*Omega < 1.
double green_d1_closed_form(double mu, long long x);

// max over the |x|_inf <= box_radius box of |(delta - mu*Omega*D) * C - delta|.
double resolvent_residual(const GreenEvaluator& green, int box_radius,
                          Exec exec = Exec::parallel);

struct GreenAsymptoticRow {
  const char* direction;  // "axis" or "diagonal"
  double absx;            // Euclidean |x|
  double value;           // C_{1/Omega}(x)
  double ratio;           // value * |x|^{d-2} / a_d
};
std::vector<GreenAsymptoticRow> green_asymptotic_audit(int d, int max_radius);

}  // namespace wsaw
