#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsaw/lace.hpp"

using namespace wsaw;

TEST_CASE("series inverse is an exact two-sided inverse") {
  const GSeries g = enumerate_G({2, Rational(1, 3), 6});
  const SpatialSeries F = series_inverse(g.series);
  const SpatialSeries id = delta_series(2, 6);
  CHECK(convolve(g.series, F) == id);
  CHECK(convolve(F, g.series) == id);
}

TEST_CASE("low-order kernel coefficients in closed form") {
  const int d = 3;
  const Rational beta(1, 7);
  const PiSeries ps = pi_from_F(invert_to_F(enumerate_G({d, beta, 4})));

  // orders 0 and 1 vanish identically
  for (const auto& [x, p] : ps.pi.entries()) {
    CHECK(p.coeff(0) == 0);
    CHECK(p.coeff(1) == 0);
  }
  // order 2: a single immediate return, weight loss beta per return,
  // summed over 2d neighbours and sitting at the origin
  const LatticePoint origin(d);
  CHECK(ps.pi.coeff(origin, 2) == Rational(-2 * d) * beta);
  for (const auto& [x, p] : ps.pi.entries())
    if (!(x == origin)) CHECK(p.coeff(2) == 0);
  // order 3: three-step irreducible loops landing on a neighbour
  CHECK(ps.pi.coeff(unit_vector(d, 0), 3) == beta * beta);
  CHECK(ps.pi.coeff(-unit_vector(d, 0), 3) == beta * beta);
  CHECK(ps.pi.coeff(origin, 3) == 0);
}

TEST_CASE("kernel vanishes identically without interaction") {
  const PiSeries ps = pi_from_F(invert_to_F(enumerate_G({3, Rational(0), 6})));
  SpatialSeries pi = ps.pi;
  pi.prune_zeros();
  CHECK(pi.empty());
}

TEST_CASE("defining recursion holds exactly and counts entries") {
  const GSeries g = enumerate_G({2, Rational(1, 2), 8});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const RecursionReport r = verify_recursion(g, ps);
  CHECK(r.order == 8);
  CHECK(r.entries_compared == 225);
  CHECK(r.nonzero_entries == 55);
}

TEST_CASE("a corrupted series is detected with its location") {
  const GSeries g = enumerate_G({2, Rational(1, 2), 6});
  const PiSeries ps = pi_from_F(invert_to_F(g));

  GSeries bad = g;
  // perturb one interior coefficient
  SpatialSeries s = bad.series;
  s.add_coeff(LatticePoint{1, 1}, 4, Rational(1, 1000));
  bad.series = s;
  CHECK_THROWS_AS(verify_recursion(bad, ps), verification_error);

  try {
    verify_recursion(bad, ps);
  } catch (const verification_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("order") != std::string::npos);
    CHECK(msg.find("x=(") != std::string::npos);
  }
}

TEST_CASE("serial and parallel paths agree exactly") {
  const GSeries g = enumerate_G({2, Rational(1, 3), 7});
  const SpatialSeries Fs = invert_to_F(g, Exec::serial);
  const SpatialSeries Fp = invert_to_F(g, Exec::parallel);
  CHECK(Fs == Fp);
  const PiSeries ps = pi_from_F(Fp);
  const RecursionReport rs = verify_recursion(g, ps, Exec::serial);
  const RecursionReport rp = verify_recursion(g, ps, Exec::parallel);
  CHECK(rs.entries_compared == rp.entries_compared);
  CHECK(rs.nonzero_entries == rp.nonzero_entries);
}

TEST_CASE("kernel and inverse are related by definition") {
  // F = delta - z*Omega*D - Pi as truncated series
  const int d = 2, N = 6;
  const GSeries g = enumerate_G({d, Rational(1, 4), N});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const SpatialSeries reconstructed =
      delta_series(d, N) -
      step_distribution(d, N).z_shifted(1).scaled(Rational(2 * d)) - ps.pi;
  CHECK(reconstructed == ps.F);
}

TEST_CASE("decay audit reports a stable envelope constant") {
  const GSeries g = enumerate_G({3, Rational(1, 10), 6});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const PiDecayAudit a = pi_decay_audit(ps, 0.08, Rational(1, 10));
  CHECK(a.exponent == 3);
  CHECK(a.K > 0);
  CHECK(a.K_prev_order > 0);
  CHECK(a.max_abs_pi > 0);
  // the fitted constant dominates the measured values by construction
  CHECK(a.stable);
}
