#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsaw/spatial_series.hpp"
#include "wsaw/walk_enum.hpp"

using namespace wsaw;

TEST_CASE("delta and step distribution") {
  const SpatialSeries d3 = delta_series(3, 2);
  CHECK(d3.coeff(LatticePoint{0, 0, 0}, 0) == 1);
  CHECK(d3.coeff(LatticePoint{1, 0, 0}, 0) == 0);

  for (int d = 1; d <= 4; ++d) {
    const SpatialSeries D = step_distribution(d);
    // D lives on the unit sphere with total mass 1 and unit second moment
    CHECK(moment(D, 0) == 1);
    CHECK(moment(D, 2) == 1);
    CHECK(D.support_radius_l1() == 1);
    const LatticePoint e1 = unit_vector(d, 0);
    CHECK(D.coeff(e1, 0) == Rational(1, 2 * d));
    CHECK(D.coeff(-e1, 0) == Rational(1, 2 * d));  // symmetry via reduction
  }
}

TEST_CASE("convolution in one dimension is the binomial spread") {
  const SpatialSeries D = step_distribution(1);
  const SpatialSeries DD = convolve(D, D);
  CHECK(DD.coeff(LatticePoint{0}, 0) == Rational(1, 2));
  CHECK(DD.coeff(LatticePoint{2}, 0) == Rational(1, 4));
  CHECK(DD.coeff(LatticePoint{-2}, 0) == Rational(1, 4));
  CHECK(DD.coeff(LatticePoint{1}, 0) == 0);
  CHECK(moment(DD, 0) == 1);
  CHECK(moment(DD, 2) == 2);  // variances add
}

TEST_CASE("convolution is symmetric and associative") {
  const int d = 2;
  const SpatialSeries D = step_distribution(d, 3);
  SpatialSeries f = delta_series(d, 3);
  f.add(unit_vector(d, 0), ZPolynomial::constant(3, Rational(1, 3)));
  CHECK(convolve(f, D) == convolve(D, f));
  CHECK(convolve(convolve(f, D), D) == convolve(f, convolve(D, D)));
}

TEST_CASE("serial and parallel convolution agree exactly") {
  const SpatialSeries g = srw_counts(3, 5);
  const SpatialSeries a = convolve(g, g, Exec::serial);
  const SpatialSeries b = convolve(g, g, Exec::parallel);
  CHECK(a == b);
}

TEST_CASE("delta is the convolution identity") {
  const SpatialSeries g = srw_counts(2, 4);
  CHECK(convolve(g, delta_series(2, 4)) == g);
}

TEST_CASE("moment series tracks orders separately") {
  // srw counts: sum_x counts_n(x) = Omega^n, sum_x |x|^2 counts_n(x) = n Omega^n
  const int d = 2;
  const SpatialSeries g = srw_counts(d, 5);
  const ZPolynomial m0 = moment_series(g, 0);
  const ZPolynomial m2 = moment_series(g, 2);
  Rational pw(1);
  for (int n = 0; n <= 5; ++n) {
    CHECK(m0.coeff(n) == pw);
    CHECK(m2.coeff(n) == Rational(n) * pw);
    pw *= 2 * d;
  }
}

TEST_CASE("walk support constraint is tracked and checked") {
  const SpatialSeries g = srw_counts(3, 4);
  CHECK(g.walk_support());
  CHECK(satisfies_walk_support(g));

  SpatialSeries bad(2, 3);
  bad.add_coeff(LatticePoint{2, 0}, 1, Rational(1));  // |x|_1 = 2 > n = 1
  CHECK_FALSE(satisfies_walk_support(bad));
}

TEST_CASE("algebraic operations") {
  const int d = 2;
  const SpatialSeries D = step_distribution(d, 2);
  const SpatialSeries twice = D + D;
  CHECK(twice == D.scaled(Rational(2)));
  CHECK((twice - D) == D);

  const SpatialSeries shifted = D.z_shifted(1);
  CHECK(shifted.coeff(unit_vector(d, 0), 1) == Rational(1, 2 * d));
  CHECK(shifted.coeff(unit_vector(d, 0), 0) == 0);

  const SpatialSeries cut = srw_counts(d, 4).truncated(2);
  CHECK(cut.order() == 2);
  CHECK(cut.coeff(LatticePoint{0, 0}, 2) == srw_counts(d, 2).coeff(LatticePoint{0, 0}, 2));
}

TEST_CASE("evaluation at rational z collapses to order zero") {
  const int d = 1;
  const SpatialSeries g = srw_counts(d, 4);
  const Rational z(1, 3);
  const SpatialSeries v = g.evaluated_at(z);
  CHECK(v.order() == 0);
  // at the origin: sum over even n of Omega^n binom(n, n/2)/Omega^n ... use
  // the direct polynomial evaluation as the reference
  CHECK(v.coeff(LatticePoint{0}, 0) == g.value_at(LatticePoint{0}).eval(z));
  CHECK(v.coeff(LatticePoint{2}, 0) == g.value_at(LatticePoint{2}).eval(z));
}

TEST_CASE("prune and equality") {
  SpatialSeries s(2, 1);
  s.add_coeff(LatticePoint{1, 0}, 1, Rational(1));
  s.add_coeff(LatticePoint{1, 1}, 1, Rational(0));
  s.prune_zeros();
  CHECK(s.entries().size() == 1);
  CHECK(s.support_radius_l1() == 1);

  SpatialSeries empty(2, 1);
  empty.prune_zeros();
  CHECK(empty.empty());
  CHECK(empty.support_radius_l1() == -1);
}

TEST_CASE("expanded support covers whole orbits deterministically") {
  SpatialSeries s(2, 0);
  s.add_coeff(LatticePoint{2, 1}, 0, Rational(5));
  const auto sup = s.expanded_support();
  CHECK(sup.size() == orbit_size(LatticePoint{2, 1}));
  for (const auto& [x, p] : sup) {
    CHECK(orbit_representative(x) == LatticePoint{2, 1});
    CHECK(p->coeff(0) == 5);
  }
}

TEST_CASE("mismatched dimensions and orders are rejected") {
  const SpatialSeries a(2, 3);
  const SpatialSeries b(3, 3);
  const SpatialSeries c(2, 4);
  CHECK_THROWS_AS(a + b, argument_error);
  CHECK_THROWS_AS(a + c, argument_error);
  CHECK_THROWS_AS(convolve(a, c), argument_error);
}
