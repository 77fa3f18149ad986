#pragma once
// Points of Z^d (d <= 8) and their orbits under the hyperoctahedral group
// (coordinate permutations combined with sign flips).  The canonical orbit
// representative of x is the lexicographically greatest image, i.e. the
// absolute values of the coordinates sorted in decreasing order.  Storing
// symmetric functions on representatives only saves up to a factor
// 2^d * d!.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "wsaw/errors.hpp"

namespace wsaw {

using Coord = std::int32_t;

class LatticePoint {
 public:
  static constexpr int kMaxDim = 8;

  LatticePoint() = default;  // dimension 0; assign before use
  explicit LatticePoint(int d) : d_(check_dim(d)) {}
  LatticePoint(std::initializer_list<Coord> v) : d_(check_dim(int(v.size()))) {
    int i = 0;
    for (Coord c : v) c_[i++] = c;
  }
  explicit LatticePoint(const std::vector<Coord>& v)
      : d_(check_dim(int(v.size()))) {
    for (int i = 0; i < d_; ++i) c_[i] = v[i];
  }

  int dim() const { return d_; }
  Coord operator[](int i) const { return c_[i]; }
  Coord& operator[](int i) { return c_[i]; }

  int l1() const {
    int s = 0;
    for (int i = 0; i < d_; ++i) s += c_[i] < 0 ? -c_[i] : c_[i];
    return s;
  }
  std::int64_t norm2() const {  // squared Euclidean norm
    std::int64_t s = 0;
    for (int i = 0; i < d_; ++i) s += std::int64_t(c_[i]) * c_[i];
    return s;
  }
  int linf() const {
    int m = 0;
    for (int i = 0; i < d_; ++i) {
      int a = c_[i] < 0 ? -c_[i] : c_[i];
      if (a > m) m = a;
    }
    return m;
  }
  bool is_origin() const {
    for (int i = 0; i < d_; ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  LatticePoint operator+(const LatticePoint& o) const {
    LatticePoint r(d_);
    for (int i = 0; i < d_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  LatticePoint operator-(const LatticePoint& o) const {
    LatticePoint r(d_);
    for (int i = 0; i < d_; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  LatticePoint operator-() const {
    LatticePoint r(d_);
    for (int i = 0; i < d_; ++i) r.c_[i] = -c_[i];
    return r;
  }

  // Unused trailing slots are always zero, so member-wise comparison is a
  // lexicographic order on the coordinates.
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  std::vector<Coord> to_vector() const {
    return std::vector<Coord>(c_.begin(), c_.begin() + d_);
  }

 private:
  static std::int8_t check_dim(int d) {
    if (d < 0 || d > kMaxDim)
      throw argument_error("lattice dimension out of range [0,8]: " +
                           std::to_string(d));
    return static_cast<std::int8_t>(d);
  }
  std::array<Coord, kMaxDim> c_{};
  std::int8_t d_ = 0;
};

inline LatticePoint unit_vector(int d, int axis) {
  LatticePoint e(d);
  e[axis] = 1;
  return e;
}

LatticePoint orbit_representative(const LatticePoint& x);
std::uint64_t orbit_size(const LatticePoint& x);
// All distinct images of x under the group, in a fixed deterministic order.
std::vector<LatticePoint> expand_orbit(const LatticePoint& x);

// Orbit representatives (nonincreasing, nonnegative coordinates) of the
// closed balls |x|_1 <= r and |x|_inf <= r, sorted ascending.
std::vector<LatticePoint> reps_l1_ball(int d, int r);
std::vector<LatticePoint> reps_linf_ball(int d, int r);

struct PointHash {
  std::size_t operator()(const LatticePoint& p) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ std::uint64_t(p.dim());
    for (int i = 0; i < p.dim(); ++i) {
      h ^= std::uint64_t(std::uint32_t(p[i])) + 0x9e3779b97f4a7c15ull +
           (h << 6) + (h >> 2);
    }
    return std::size_t(h);
  }
};

}  // namespace wsaw
