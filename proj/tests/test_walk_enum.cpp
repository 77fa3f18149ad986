#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <vector>

#include "wsaw/walk_enum.hpp"

using namespace wsaw;

namespace {

// Independent oracle: enumerate every n-step nearest-neighbour walk by a
// plain odometer over step sequences and accumulate (1-beta)^P directly,
// where P counts pairs s < t of equal positions along the walk (including
// the starting origin).  No shared code with the library kernel.
std::map<LatticePoint, Rational> oracle_g(int d, const Rational& beta,
                                          int n) {
  std::map<LatticePoint, Rational> out;
  const int nsteps = 2 * d;
  std::vector<int> steps(n, 0);
  while (true) {
    std::vector<LatticePoint> path;
    path.push_back(LatticePoint(d));
    for (int i = 0; i < n; ++i) {
      LatticePoint next = path.back();
      const int axis = steps[i] / 2, sign = (steps[i] % 2) ? -1 : 1;
      next[axis] += sign;
      path.push_back(next);
    }
    int pairs = 0;
    for (std::size_t s = 0; s < path.size(); ++s)
      for (std::size_t t = s + 1; t < path.size(); ++t)
        if (path[s] == path[t]) ++pairs;
    out[path.back()] += rational_pow(Rational(1) - beta, pairs);

    int i = 0;
    while (i < n && steps[i] == nsteps - 1) steps[i++] = 0;
    if (i == n) break;
    ++steps[i];
  }
  return out;
}

}  // namespace

TEST_CASE("zero interaction reduces to simple-random-walk counts") {
  for (int d = 1; d <= 3; ++d) {
    const GSeries g = enumerate_G({d, Rational(0), 5});
    CHECK(g.series == srw_counts(d, 5));
  }
}

TEST_CASE("susceptibility in one dimension with beta one half") {
  const GSeries g = enumerate_G({1, Rational(1, 2), 4});
  const ZPolynomial chi = chi_series(g);
  CHECK(chi.coeff(0) == Rational(1));
  CHECK(chi.coeff(1) == Rational(2));
  CHECK(chi.coeff(2) == Rational(3));
  CHECK(chi.coeff(3) == Rational(9, 2));
  CHECK(chi.coeff(4) == Rational(47, 8));
}

TEST_CASE("two-point series matches the brute-force oracle") {
  struct Case {
    int d;
    Rational beta;
  };
  for (const Case& c : {Case{1, Rational(1, 2)}, Case{2, Rational(1, 3)}}) {
    const int N = 5;
    const GSeries g = enumerate_G({c.d, c.beta, N});
    for (int n = 0; n <= N; ++n) {
      const auto oracle = oracle_g(c.d, c.beta, n);
      // every oracle value matches, and nothing outside the oracle support
      Rational total_lib(0), total_orc(0);
      for (const auto& [x, v] : oracle) {
        CHECK(g.series.coeff(x, n) == v);
        total_orc += v;
      }
      for (const auto& [x, p] : g.series.entries())
        total_lib +=
            Rational(static_cast<unsigned long>(orbit_size(x))) * p.coeff(n);
      CHECK(total_lib == total_orc);
    }
  }
}

TEST_CASE("parallel kernel agrees exactly with the serial reference") {
  for (const WalkWeightParams p :
       {WalkWeightParams{2, Rational(1, 3), 5},
        WalkWeightParams{3, Rational(1, 10), 4}}) {
    const GSeries a = enumerate_G(p);
    const GSeries b = enumerate_G_reference(p);
    CHECK(a.series == b.series);
  }
}

TEST_CASE("thread count does not change exact results") {
  WalkWeightParams p1{2, Rational(1, 7), 6};
  p1.threads = 1;
  WalkWeightParams p4 = p1;
  p4.threads = 4;
  CHECK(enumerate_G(p1).series == enumerate_G(p4).series);
}

TEST_CASE("support and parity constraints hold") {
  const GSeries g = enumerate_G({2, Rational(1, 4), 6});
  CHECK(g.series.walk_support());
  CHECK(satisfies_walk_support(g.series));
  for (const auto& [x, p] : g.series.entries()) {
    for (int n = 0; n <= 6; ++n) {
      if (p.coeff(n) == 0) continue;
      CHECK(x.l1() <= n);
      CHECK((n - x.l1()) % 2 == 0);  // bipartite lattice parity
    }
  }
}

TEST_CASE("coefficients are positive and decrease with stronger repulsion") {
  const GSeries weak = enumerate_G({2, Rational(1, 4), 5});
  const GSeries strong = enumerate_G({2, Rational(1, 3), 5});
  // both have full walk support, so iterating one support covers the other
  for (const auto& [x, p] : weak.series.entries()) {
    for (int n = 0; n <= 5; ++n) {
      const Rational w = p.coeff(n);
      const Rational s = strong.series.coeff(x, n);
      if (w == 0) {
        CHECK(s == 0);
        continue;
      }
      CHECK(w > 0);
      CHECK(s > 0);
      CHECK(s <= w);
    }
  }
}

TEST_CASE("work estimation and the resource guard") {
  CHECK(estimated_walks(1, 2) == 7);       // 1 + 2 + 4
  CHECK(estimated_walks(2, 3) == 85);      // 1 + 4 + 16 + 64
  CHECK(estimated_walks(8, 40) == UINT64_MAX);  // saturates, no overflow

  WalkWeightParams p{3, Rational(1, 10), 10};
  p.work_limit = 10;
  CHECK_THROWS_AS(enumerate_G(p), resource_error);
  CHECK_THROWS_AS(enumerate_G_reference(p), resource_error);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(enumerate_G({0, Rational(0), 3}), argument_error);
  CHECK_THROWS_AS(enumerate_G({2, Rational(1), 3}), argument_error);
  CHECK_THROWS_AS(enumerate_G({2, Rational(-1, 2), 3}), argument_error);
  CHECK_THROWS_AS(enumerate_G({2, Rational(0), -1}), argument_error);
}
