#pragma once
// Torus Fourier transforms of symmetric finitely supported coefficient
// tables, hhat(k) = sum_x h(x) cos(k.x), with exact partial derivatives
//   d^alpha hhat(k) = sum_x h(x) x^alpha Re[i^{|alpha|} e^{ik.x}].
// The fast path sums one orbit at a time: summing x^alpha e^{ik.x} over all
// signed permutations of a representative v factorizes per axis into
//   rho(a, kappa, v) = v^a cos(kappa v)   (a even)
//                      v^a sin(kappa v)   (a odd),
// and the permutation sum becomes the permanent of the d x d matrix
// A[j][c] = rho(alpha_j, k_j, v_c), evaluated with Ryser's formula in
// O(2^d d).  A full-support direct sum is kept as the serial reference,
// plus a finite-difference cross-check mode.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "wsaw/lace.hpp"
#include "wsaw/spatial_series.hpp"

namespace wsaw {

struct TorusPoint {
  std::array<double, LatticePoint::kMaxDim> k{};
  int d = 0;

  TorusPoint() = default;
  explicit TorusPoint(int dim) : d(dim) {}
  explicit TorusPoint(const std::vector<double>& v);
  double operator[](int j) const { return k[std::size_t(j)]; }
  double& operator[](int j) { return k[std::size_t(j)]; }
  double norm2() const;  // |k|^2
};

// multi-index alpha with nonnegative entries; |alpha| = l1 norm
using MultiIndex = LatticePoint;

double dhat(int d, const TorusPoint& k);  // (1/d) sum_j cos k_j

class HatEvaluator {
 public:
  // collapses the series at the evaluation point z (a series already
  // collapsed to order 0 ignores z)
  HatEvaluator(const SpatialSeries& s, double z);

  int dim() const { return d_; }
  double value_sum() const { return hat0_; }  // hhat(0)

  double eval(const TorusPoint& k) const;
  double deriv(const TorusPoint& k, const MultiIndex& alpha) const;
  double deriv_direct(const TorusPoint& k, const MultiIndex& alpha) const;
  double deriv_fd(const TorusPoint& k, const MultiIndex& alpha,
                  double h = 0) const;

 private:
  struct Entry {
    std::array<int, LatticePoint::kMaxDim> v;
    double hw;  // value * orbit_size / d!
  };
  int d_ = 0;
  int vmax_ = 0;
  double hat0_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::pair<LatticePoint, double>> full_;
};

// Reduced momentum grid for even L: representatives m with
// L/2 >= m_1 >= ... >= m_d >= 0 and multiplicity weight
// (#distinct permutations) * 2^{#(0 < m_i < L/2)}; weights sum to L^d.
struct GridPoint {
  LatticePoint m;
  std::uint64_t weight;
};
std::vector<GridPoint> reduced_grid(int d, int L);
TorusPoint grid_k(int d, int L, const LatticePoint& m);

struct InfraredScan {
  int L = 0;
  double z = 0;
  double c_est = 0;    // min over k != 0 of Fhat(k) / |k|^2
  double min_F = 0;    // min over k != 0 of Fhat(k)
  double F0 = 0;       // Fhat(0)
  bool positive = false;
  LatticePoint argmin_m;
  TorusPoint argmin_k;
};
InfraredScan infrared_scan(const PiSeries& pi, double z, int L,
                           Exec exec = Exec::parallel);
// full-grid serial reference (small d and L only)
InfraredScan infrared_scan_reference(const PiSeries& pi, double z, int L);

// |Ghat(k) Fhat(k) - 1| over the reduced grid, against the exact
// dropped-tail bound sum_{n=N+1}^{2N} |z|^n ||(G*F)_n||_1 from the
// double-order convolution.
struct FourierIdentityCheck {
  int L = 0;
  double max_residual = 0;
  double tail_bound = 0;
};
FourierIdentityCheck fourier_identity_check(const GSeries& g,
                                            const SpatialSeries& F, double z,
                                            int L, Exec exec = Exec::parallel);

// deterministic direction set: axes, the main diagonal, then unit vectors
// drawn by cube rejection from a fixed-seed mt19937_64
std::vector<TorusPoint> make_directions(int d, int n_random,
                                        std::uint64_t seed = 12345);

struct ShellValue {
  double r;
  double value;
};
// max |f(r * dir)| over the direction set, per radius
std::vector<ShellValue> shell_max(const std::vector<double>& radii,
                                  const std::vector<TorusPoint>& dirs,
                                  const std::function<double(const TorusPoint&)>& f);

std::vector<double> log_spaced(double lo, double hi, int n);

// Small-k scaling audit of Ehat: for each derivative order a <= max_order,
// shell maxima of |d^alpha Ehat| over partition patterns of a and the
// direction set, with a log-log slope fit (expected 4 - a when both
// discrete moments vanish).
struct EhatScalingConfig {
  double r_min = 0.05;
  double r_max = 0.5;
  int n_radii = 9;
  int n_random_dirs = 32;
  std::uint64_t seed = 12345;
  int max_order = 3;
  double fit_r_min = 0;  // exclude radii below this from the slope fit
};
struct OrderFit {
  int order = 0;
  double slope = 0;
  double amplitude = 0;  // exp(intercept) of the log-log fit
  std::vector<ShellValue> shells;
};
struct EhatScalingAudit {
  std::vector<OrderFit> fits;
};
EhatScalingAudit ehat_scaling_audit(const SpatialSeries& E,
                                    const EhatScalingConfig& cfg = {});

// Grid L^1 means of |d^alpha (Chat_mu * Ehat * Ghat_z)| for |alpha| <=
// max_order, one row per partition pattern, averaged over the axis
// assignments of the pattern so the reduced grid applies.
struct FhatL1Row {
  std::vector<int> pattern;  // derivative orders, nonincreasing
  double l1_mean = 0;
};
struct FhatL1Audit {
  int L = 0;
  std::vector<FhatL1Row> rows;
};
FhatL1Audit fhat_l1_audit(const SpatialSeries& E, const GSeries& g, double z,
                          double mu, int L, int max_order = 3,
                          Exec exec = Exec::parallel);

// derivatives of Chat_mu(k) = 1/(1 - mu*Omega*Dhat(k)) up to order 3
double chat_deriv(int d, double mu, const TorusPoint& k,
                  const MultiIndex& alpha);

}  // namespace wsaw
