#pragma once
// Order-by-order inversion of the two-point series and the irreducible
// kernel extracted from it.  F is defined by (G * F)(x) = delta_{0,x}
// through the truncation order; writing F = delta - z*Omega*D - Pi defines
// the kernel Pi.  Inversion is back-substitution: with g_0 = delta,
//   F_n(x) = [n = 0] delta_{0,x} - sum_{m=1}^{n} sum_y g_m(y) F_{n-m}(x-y).
// The defining recursion G = delta + z*Omega*(D*G) + Pi*G then holds as an
// exact identity of truncated series, which verify_recursion checks
// coefficient by coefficient.

#include <cstdint>
#include <string>

#include "wsaw/walk_enum.hpp"

namespace wsaw {

struct PiSeries {
  SpatialSeries pi;  // kernel
  SpatialSeries F;   // inverse series it came from
};

// Inverse of a series with unit constant term (value at the origin has
// constant coefficient 1, all other entries start at order >= 1).
SpatialSeries series_inverse(const SpatialSeries& g,
                             Exec exec = Exec::parallel);

SpatialSeries invert_to_F(const GSeries& g, Exec exec = Exec::parallel);
PiSeries pi_from_F(SpatialSeries F);

struct RecursionReport {
  int order = 0;
  std::int64_t entries_compared = 0;
  std::int64_t nonzero_entries = 0;
};

// Throws verification_error naming the first failing (n, x) otherwise.
RecursionReport verify_recursion(const GSeries& g, const PiSeries& pi,
                                 Exec exec = Exec::parallel);

// Smallest K with |Pi_z(x)| <= K * beta / (1 + |x|^{3(d-2)}) over the
// support (|x| Euclidean), compared against the same fit one order lower.
struct PiDecayAudit {
  int exponent = 0;          // 3(d-2)
  double K = 0;              // fitted constant (bound is K*beta/(1+|x|^e))
  double K_prev_order = 0;   // same fit from Pi truncated at N-1
  bool stable = true;        // within 20 percent
  double max_abs_pi = 0;
};
PiDecayAudit pi_decay_audit(const PiSeries& pi, double z, const Rational& beta);

}  // namespace wsaw
