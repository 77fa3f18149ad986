#pragma once
// Exact enumeration of the two-point series
//   g_n(x) = sum over n-step nearest-neighbour walks 0 -> x of (1-beta)^P(w),
// where P(w) counts coincidence pairs s < t with w(s) = w(t).  A walk
// revisiting a site that already carries m earlier visits gains m pairs, so
// P accumulates incrementally along a depth-first traversal of the walk
// tree.  Weights (1-beta)^P are attached after traversal: the traversal
// itself only bins integer counts by (endpoint, length, P), which makes the
// parallel reduction exact and order-independent.
//
// enumerate_G is the OpenMP kernel: walks are split over the subtrees of
// depth-t prefixes, and the first step is pinned to +e_1 (counts restored
// via the orbit identity g_n(y) = Omega * [orbit-folded pinned counts] /
// |orbit(y)|).  enumerate_G_reference is a plain serial traversal over all
// first steps, kept as the reference implementation for testing.

#include <cstdint>

#include "wsaw/spatial_series.hpp"

namespace wsaw {

struct WalkWeightParams {
  int d = 1;
  Rational beta = Rational(0);  // in [0,1)
  int order = 0;                // truncation order N
  std::uint64_t work_limit = 10'000'000'000ull;  // bound on estimated walks
  int threads = 0;              // 0 = OpenMP default
};

struct GSeries {
  WalkWeightParams params;
  SpatialSeries series;
};

// sum_{n<=N} (2d)^n, saturating at UINT64_MAX.
std::uint64_t estimated_walks(int d, int order);

GSeries enumerate_G(const WalkWeightParams& p);
GSeries enumerate_G_reference(const WalkWeightParams& p);

// Simple-random-walk counts Omega^n D^{*n}(x) as an order-N series,
// computed by exact convolution powers (independent of the walk traversal).
SpatialSeries srw_counts(int d, int order);

// chi_n = sum_x g_n(x).
ZPolynomial chi_series(const GSeries& g);

}  // namespace wsaw
