#pragma once
// Exact recentering of the kernel at rational z:
//   lambda_z = 1 / (1 - Pihat_z(0) + sum_x |x|^2 Pi_z(x)),
//   mu_z * Omega = 1 - lambda_z * Fhat_z(0),
//   E_z = (1 - lambda_z)(delta - D) - lambda_z Pihat_z(0) D + lambda_z Pi_z.
// Both discrete moments of E_z vanish identically for every z because the
// step distribution has unit second moment; this is re-verified in exact
// arithmetic.  The remainder f := G_z - lambda_z C_{mu_z} is reproduced by
// transporting the exact convolution S := (delta - mu Omega D) * G_z -
// lambda_z delta through the Green table, f = C_{mu_z} * S, so the reported
// residual G - lambda C - f contains quadrature error only.  When E
// vanishes identically f is exactly zero by definition and the residual
// instead reports the raw truncation gap between the order-N series and
// the full resolvent.

#include <map>
#include <vector>

#include "wsaw/green.hpp"
#include "wsaw/lace.hpp"

namespace wsaw {

struct Decomposition {
  int d = 0;
  Rational z;
  Rational lambda;
  Rational mu;
  Rational pihat0;   // Pihat_z(0)
  Rational pi_m2;    // sum |x|^2 Pi_z(x)
  Rational Fhat0;    // 1 - z*Omega - Pihat_z(0)
  SpatialSeries E;   // order-0 exact coefficients
  Rational E_m0;     // exactly zero
  Rational E_m2;     // exactly zero
};

// scalars only (E left empty); throws degeneracy_error on a vanishing
// denominator
Decomposition lambda_mu(const PiSeries& pi, const Rational& z);
// scalars plus the recentered kernel and its (verified zero) moments
Decomposition build_E(const PiSeries& pi, const Rational& z);

struct FTable {
  Rational z;
  int box = 0;
  bool exact_zero = false;  // E vanished identically, so f is exactly zero
  std::map<LatticePoint, double> f;
  std::map<LatticePoint, double> residual;  // G_z - lambda C - f per point
  double max_abs_residual = 0;
  double max_abs_G = 0;
};
FTable build_f(const Decomposition& dec, const GSeries& g,
               const GreenEvaluator& green, int box_radius,
               Exec exec = Exec::parallel);

struct BootstrapReport {
  double z = 0;
  int box = 0;
  double b = 0;  // max over the box of G_z(x) / C_{1/Omega}(x)
  LatticePoint argmax;
  bool on_boundary = false;
};
BootstrapReport bootstrap_b(const GSeries& g, double z, int box_radius,
                            GreenConfig cfg = {}, Exec exec = Exec::parallel);

struct ZcEstimate {
  double zc = 0;
  double error_bar = 0;
  bool ge_free_bound = false;  // zc >= 1/Omega - 1e-6
  std::vector<double> ratios;  // chi_{n-1} / chi_n
  // Aitken acceleration over same-parity ratio triples (the bipartite
  // lattice makes consecutive ratios oscillate with the parity of n)
  std::vector<double> accels;
};
ZcEstimate zc_estimate(const ZPolynomial& chi, int d);

struct DecayFit {
  double exponent = 0;      // slope of log|value| vs log r
  double stderr_slope = 0;
  double amplitude = 0;     // exp(intercept)
  int n_used = 0;
};
DecayFit decay_fit(const std::vector<std::pair<double, double>>& pts);

// nearest p/1000000 rational, used to freeze numerically chosen evaluation
// points into exact arithmetic
Rational round_to_millionths(double x);

}  // namespace wsaw
