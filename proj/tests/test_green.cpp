#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wsaw/green.hpp"

using namespace wsaw;

TEST_CASE("massless lattice Green function at the origin in three dimensions") {
  // the classical simple-cubic return-probability constant
  const GreenEvaluator green(3, 1.0 / 6.0);
  CHECK(green.mass() == 1.0);
  CHECK(green(LatticePoint{0, 0, 0}) ==
        doctest::Approx(1.516386059152).epsilon(1e-12));
  // C(e1) = C(0) - 1 from the resolvent identity at the origin
  CHECK(green(LatticePoint{1, 0, 0}) ==
        doctest::Approx(green(LatticePoint{0, 0, 0}) - 1.0).epsilon(1e-11));
}

TEST_CASE("one-dimensional closed form") {
  const double mu = 0.2;  // c = 0.4
  // tight quadrature target: the comparison is against an exact closed form
  const GreenEvaluator green(1, mu, GreenConfig{1e-13, 60});
  for (long long x : {0LL, 1LL, 2LL, 5LL, 9LL}) {
    CHECK(green(LatticePoint{Coord(x)}) ==
          doctest::Approx(green_d1_closed_form(mu, x)).epsilon(1e-11));
  }
}

TEST_CASE("integral route matches the independent summation route") {
  for (int d : {2, 3, 5}) {
    const double mu = 0.95 / (2.0 * d);
    const GreenEvaluator green(d, mu);
    LatticePoint x(d);
    x[0] = 2;
    if (d > 1) x[1] = 1;
    for (const LatticePoint& p : {LatticePoint(d), x}) {
      const double a = green(p);
      const double b = green_series_eval(d, mu, p);
      CHECK(std::fabs(a - b) <= 1e-9);
    }
  }
}

TEST_CASE("resolvent identity holds on a box") {
  const GreenEvaluator sub(3, 0.8 / 6.0);
  CHECK(resolvent_residual(sub, 4) <= 1e-9);
  const GreenEvaluator massless(3, 1.0 / 6.0);
  CHECK(resolvent_residual(massless, 4) <= 1e-9);
}

TEST_CASE("monotone in the killing rate") {
  const LatticePoint x{1, 1, 0};
  double prev = 0.0;
  for (double c : {0.3, 0.6, 0.9, 1.0}) {
    const GreenEvaluator green(3, c / 6.0);
    const double v = green(x);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("far-field amplitude constants") {
  // d=3: 3 Gamma(1/2) / (2 pi^{3/2}) = 3/(2 pi)
  CHECK(amplitude_a_d(3) == doctest::Approx(3.0 / (2.0 * M_PI)).epsilon(1e-14));
  // d=5: 5 Gamma(3/2) / (2 pi^{5/2}) = 5/(4 pi^2)
  CHECK(amplitude_a_d(5) ==
        doctest::Approx(5.0 / (4.0 * M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("massless far field approaches the power-law amplitude") {
  const auto rows = green_asymptotic_audit(3, 8);
  REQUIRE(!rows.empty());
  double last_axis = 0.0;
  for (const auto& r : rows) {
    CHECK(r.value > 0);
    CHECK(r.ratio > 0.8);
    CHECK(r.ratio < 1.5);
    if (std::string(r.direction) == "axis") last_axis = r.ratio;
  }
  // ratio -> 1 from above as |x| grows (first lattice correction is positive)
  CHECK(last_axis == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("massless evaluation is not sensitive to the tolerance knob") {
  GreenConfig tight;
  tight.abs_tol = 1e-12;
  const GreenEvaluator a(3, 1.0 / 6.0);
  const GreenEvaluator b(3, 1.0 / 6.0, tight);
  const LatticePoint x{4, 3, 2};
  CHECK(std::fabs(a(x) - b(x)) <= 2e-10);
}

TEST_CASE("table evaluation matches pointwise and is thread independent") {
  const GreenEvaluator green(3, 0.9 / 6.0);
  const auto reps = reps_linf_ball(3, 2);
  const auto ts = green.table(reps, Exec::serial);
  const auto tp = green.table(reps, Exec::parallel);
  REQUIRE(ts.size() == reps.size());
  for (const auto& r : reps) {
    CHECK(ts.at(r) == tp.at(r));  // bitwise: same code path per point
    CHECK(ts.at(r) == green(r));
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(GreenEvaluator(3, 1.1 / 6.0), argument_error);   // c > 1
  CHECK_THROWS_AS(GreenEvaluator(2, 1.0 / 4.0), argument_error);   // massless d<3
  CHECK_THROWS_AS(GreenEvaluator(3, -0.1), argument_error);
  const GreenEvaluator green(3, 0.5 / 6.0);
  CHECK_THROWS_AS(green(LatticePoint{1, 1}), argument_error);  // dim mismatch
  LatticePoint far{64, 0, 0};  // Bessel order beyond the supported window
  CHECK_THROWS_AS(green(far), argument_error);
}

TEST_CASE("mass snapping tolerates rounding in mu") {
  const GreenEvaluator green(3, (1.0 + 1e-14) / 6.0);
  CHECK(green.mass() == 1.0);
}
