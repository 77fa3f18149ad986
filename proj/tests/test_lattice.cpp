#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "wsaw/lattice.hpp"

using namespace wsaw;

namespace {

// every point of the |x|_inf <= r box in dimension d, by odometer
std::vector<LatticePoint> full_box(int d, int r) {
  std::vector<LatticePoint> out;
  std::vector<Coord> c(static_cast<std::size_t>(d), Coord(-r));
  for (;;) {
    out.push_back(LatticePoint(c));
    int i = 0;
    while (i < d && c[static_cast<std::size_t>(i)] == r) {
      c[static_cast<std::size_t>(i)] = Coord(-r);
      ++i;
    }
    if (i == d) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

TEST_CASE("representative is the sorted absolute-value vector") {
  CHECK(orbit_representative(LatticePoint{-1, 2, 0}) == LatticePoint{2, 1, 0});
  CHECK(orbit_representative(LatticePoint{0, 0}) == LatticePoint{0, 0});
  CHECK(orbit_representative(LatticePoint{-3}) == LatticePoint{3});
  CHECK(orbit_representative(LatticePoint{1, -1, 1, -1}) ==
        LatticePoint{1, 1, 1, 1});
  CHECK(orbit_representative(LatticePoint{-2, 5, -5, 1}) ==
        LatticePoint{5, 5, 2, 1});
}

TEST_CASE("representative is idempotent and orbit-invariant over a full box") {
  for (int d = 1; d <= 3; ++d) {
    for (const LatticePoint& x : full_box(d, 2)) {
      const LatticePoint r = orbit_representative(x);
      CHECK(orbit_representative(r) == r);
      // canonical form: nonincreasing, nonnegative
      for (int i = 0; i < d; ++i) {
        CHECK(r[i] >= 0);
        if (i + 1 < d) CHECK(r[i] >= r[i + 1]);
      }
      CHECK(r.l1() == x.l1());
      CHECK(r.norm2() == x.norm2());
    }
  }
}

TEST_CASE("orbit size equals the number of distinct images") {
  // group by representative over a full box and compare class sizes
  for (int d = 1; d <= 3; ++d) {
    std::map<LatticePoint, std::size_t> class_size;
    for (const LatticePoint& x : full_box(d, 2))
      ++class_size[orbit_representative(x)];
    for (const auto& [rep, n] : class_size) {
      CHECK(orbit_size(rep) == n);
      const auto orbit = expand_orbit(rep);
      CHECK(orbit.size() == n);
      std::set<LatticePoint> distinct(orbit.begin(), orbit.end());
      CHECK(distinct.size() == n);
      for (const LatticePoint& y : orbit)
        CHECK(orbit_representative(y) == rep);
    }
  }
}

TEST_CASE("known orbit sizes") {
  CHECK(orbit_size(LatticePoint{0, 0, 0}) == 1);
  CHECK(orbit_size(LatticePoint{1, 0, 0}) == 6);    // 3 axes * 2 signs
  CHECK(orbit_size(LatticePoint{2, 1, 0}) == 24);   // 3! perms * 2^2 signs
  CHECK(orbit_size(LatticePoint{1, 1, 1}) == 8);    // signs only
  CHECK(orbit_size(LatticePoint{2, 2, 1}) == 24);   // 3 positions * 2^3
  CHECK(orbit_size(LatticePoint{1, 0, 0, 0, 0}) == 10);  // 2d on the axis
}

TEST_CASE("l1 ball representatives cover the ball exactly once") {
  for (int d = 1; d <= 3; ++d) {
    const int r = 3;
    const auto reps = reps_l1_ball(d, r);
    CHECK(std::is_sorted(reps.begin(), reps.end()));
    // distinct and canonical
    std::set<LatticePoint> seen;
    std::uint64_t total = 0;
    for (const auto& p : reps) {
      CHECK(orbit_representative(p) == p);
      CHECK(p.l1() <= r);
      CHECK(seen.insert(p).second);
      total += orbit_size(p);
    }
    // compare against a brute-force count of the l1 ball
    std::uint64_t brute = 0;
    for (const LatticePoint& x : full_box(d, r))
      if (x.l1() <= r) ++brute;
    CHECK(total == brute);
  }
}

TEST_CASE("linf ball representatives cover the box exactly once") {
  for (int d = 1; d <= 4; ++d) {
    const int r = 2;
    const auto reps = reps_linf_ball(d, r);
    CHECK(std::is_sorted(reps.begin(), reps.end()));
    std::uint64_t total = 0;
    for (const auto& p : reps) {
      CHECK(orbit_representative(p) == p);
      CHECK(p.linf() <= r);
      total += orbit_size(p);
    }
    std::uint64_t box = 1;
    for (int i = 0; i < d; ++i) box *= std::uint64_t(2 * r + 1);
    CHECK(total == box);
  }
}

TEST_CASE("point arithmetic and norms") {
  const LatticePoint a{3, -1, 2};
  const LatticePoint b{-1, 1, 1};
  CHECK(a + b == LatticePoint{2, 0, 3});
  CHECK(a - b == LatticePoint{4, -2, 1});
  CHECK(-a == LatticePoint{-3, 1, -2});
  CHECK(a.l1() == 6);
  CHECK(a.norm2() == 14);
  CHECK(a.linf() == 3);
  CHECK_FALSE(a.is_origin());
  CHECK(LatticePoint(3).is_origin());
  CHECK(unit_vector(4, 2) == LatticePoint{0, 0, 1, 0});
}

TEST_CASE("dimension bounds are enforced") {
  CHECK_THROWS_AS(LatticePoint(9), argument_error);
  CHECK_NOTHROW(LatticePoint(8));
  CHECK_THROWS_AS(reps_l1_ball(9, 1), argument_error);
}

TEST_CASE("hash distinguishes nearby points") {
  PointHash h;
  std::set<std::size_t> hashes;
  for (const LatticePoint& x : full_box(3, 2)) hashes.insert(h(x));
  CHECK(hashes.size() == full_box(3, 2).size());
}
