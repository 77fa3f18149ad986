#pragma once
// Finitely supported maps Z^d -> Q[z]/z^{N+1}.  By default a series is
// stored orbit-reduced: keys are canonical orbit representatives and the
// value at any x is the value at its representative (all functions produced
// by the walk pipeline are invariant under the lattice symmetry group).
// Walk-generated series additionally satisfy the support constraint
// "coefficient of z^n vanishes unless |x|_1 <= n", tracked by a flag that
// lets convolution prune provably zero outputs.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "wsaw/lattice.hpp"
#include "wsaw/zpoly.hpp"

namespace wsaw {

enum class Exec { serial, parallel };

class SpatialSeries {
 public:
  SpatialSeries() = default;
  SpatialSeries(int d, int order, bool orbit_reduced = true);

  int dim() const { return d_; }
  int order() const { return order_; }
  bool orbit_reduced() const { return orbit_reduced_; }
  bool walk_support() const { return walk_support_; }
  void set_walk_support(bool v) { walk_support_ = v; }

  // value access; x is reduced to its representative in reduced mode
  const ZPolynomial& value_at(const LatticePoint& x) const;
  Rational coeff(const LatticePoint& x, int n) const;

  void set(const LatticePoint& x, ZPolynomial p);
  void add(const LatticePoint& x, const ZPolynomial& p);
  void add_coeff(const LatticePoint& x, int n, const Rational& v);

  const std::map<LatticePoint, ZPolynomial>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }
  int support_radius_l1() const;  // max |x|_1 over support, -1 if empty

  // Full support (orbits expanded in reduced mode), deterministic order.
  std::vector<std::pair<LatticePoint, const ZPolynomial*>> expanded_support()
      const;

  SpatialSeries operator+(const SpatialSeries& o) const;
  SpatialSeries operator-(const SpatialSeries& o) const;
  SpatialSeries scaled(const Rational& c) const;
  SpatialSeries z_shifted(int m) const;
  SpatialSeries truncated(int new_order) const;
  // collapse to an order-0 series of exact values at rational z
  SpatialSeries evaluated_at(const Rational& z) const;

  void prune_zeros();
  bool operator==(const SpatialSeries& o) const;

 private:
  void check_compatible(const SpatialSeries& o) const;
  LatticePoint key_for(const LatticePoint& x) const;
  int d_ = 0;
  int order_ = 0;
  bool orbit_reduced_ = true;
  bool walk_support_ = false;
  std::map<LatticePoint, ZPolynomial> entries_;
  ZPolynomial zero_;  // order-tagged zero returned for absent entries
};

// Kronecker delta at the origin.
SpatialSeries delta_series(int d, int order);
// Nearest-neighbour step distribution D(x) = 1/(2d) on |x|_1 = 1.  The
// one-argument form tags order 0; the overload retags for use against
// order-N series (binary ops require equal truncation orders).
SpatialSeries step_distribution(int d);
SpatialSeries step_distribution(int d, int order);

// Truncated convolution (f*g)(x) = sum_y f(y) g(x-y); exact, symmetric in
// the inputs, associative.  Inputs must share d and order and be
// orbit-reduced.  The parallel path and the serial path produce identical
// results (per-output independence, exact arithmetic).
SpatialSeries convolve(const SpatialSeries& f, const SpatialSeries& g,
                       Exec exec = Exec::parallel);

// sum_x |x|^p f(x) with p in {0,2}; per-order exact moments.
ZPolynomial moment_series(const SpatialSeries& f, int p);
// Scalar form for collapsed (order-0) series.
Rational moment(const SpatialSeries& f, int p);

// True when every coefficient respects "zero unless |x|_1 <= n".
bool satisfies_walk_support(const SpatialSeries& f);

}  // namespace wsaw
