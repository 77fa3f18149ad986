#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "wsaw/critical.hpp"
#include "wsaw/torus.hpp"

using namespace wsaw;

TEST_CASE("step-distribution transform at reference momenta") {
  TorusPoint k0(3);
  CHECK(dhat(3, k0) == 1.0);
  TorusPoint kpi(3);
  kpi[0] = kpi[1] = kpi[2] = M_PI;
  CHECK(dhat(3, kpi) == doctest::Approx(-1.0).epsilon(1e-15));
  TorusPoint kx(2);
  kx[0] = M_PI / 2.0;
  CHECK(dhat(2, kx) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("orbit-factorized transform equals the direct full-support sum") {
  const GSeries g = enumerate_G({3, Rational(1, 4), 5});
  const HatEvaluator hat(g.series, 0.07);

  // hhat(0) = plain value sum
  double direct0 = 0.0;
  for (const auto& [x, p] : g.series.expanded_support())
    direct0 += p->eval_double(0.07);
  CHECK(hat.value_sum() == doctest::Approx(direct0).epsilon(1e-13));

  const MultiIndex a0(3);            // plain value
  const MultiIndex a2{2, 0, 0};      // second derivative, one axis
  const MultiIndex a11{1, 1, 0};     // mixed
  const MultiIndex a3{2, 1, 0};      // third order
  for (double kx : {0.0, 0.3, 1.1}) {
    TorusPoint k(3);
    k[0] = kx;
    k[1] = 0.7 * kx;
    k[2] = -0.2;
    CHECK(hat.eval(k) ==
          doctest::Approx(hat.deriv_direct(k, a0)).epsilon(1e-12));
    for (const MultiIndex& a : {a0, a2, a11, a3}) {
      const double fast = hat.deriv(k, a);
      const double slow = hat.deriv_direct(k, a);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
      const double fd = hat.deriv_fd(k, a);
      CHECK(std::fabs(fast - fd) <= 1e-4 * (1.0 + std::fabs(fast)));
    }
  }
}

TEST_CASE("reduced momentum grid reproduces the full torus") {
  for (int d : {1, 2, 3}) {
    for (int L : {4, 6, 8}) {
      std::uint64_t total = 0;
      for (const GridPoint& gp : reduced_grid(d, L)) total += gp.weight;
      std::uint64_t full = 1;
      for (int j = 0; j < d; ++j) full *= std::uint64_t(L);
      CHECK(total == full);
    }
  }
  // grid_k maps integer indices to momenta 2 pi m / L
  const TorusPoint k = grid_k(2, 8, LatticePoint{3, 1});
  CHECK(k[0] == doctest::Approx(2.0 * M_PI * 3.0 / 8.0).epsilon(1e-15));
  CHECK(k[1] == doctest::Approx(2.0 * M_PI / 8.0).epsilon(1e-15));
}

TEST_CASE("reduced infrared scan equals the full-grid reference") {
  const GSeries g = enumerate_G({2, Rational(1, 3), 6});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const double z = 0.10;
  for (int L : {4, 6}) {
    const InfraredScan a = infrared_scan(ps, z, L);
    const InfraredScan b = infrared_scan_reference(ps, z, L);
    CHECK(a.c_est == doctest::Approx(b.c_est).epsilon(1e-12));
    CHECK(a.min_F == doctest::Approx(b.min_F).epsilon(1e-12));
    CHECK(a.F0 == doctest::Approx(b.F0).epsilon(1e-12));
    CHECK(a.positive == b.positive);
  }
}

TEST_CASE("free-walk infrared constant is exact on the grid") {
  // with no interaction Fhat(k) = 1 - z*Omega*Dhat(k); at the free critical
  // point z = 1/Omega this is (1/d) sum_j (1 - cos k_j), and the minimum of
  // Fhat(k)/|k|^2 over the grid is 2/(d pi^2), attained exactly at every
  // point whose nonzero coordinates all equal pi (the per-axis function
  // (1 - cos)/kappa^2 is minimized at kappa = pi)
  const int d = 2, L = 8;
  const GSeries g = enumerate_G({d, Rational(0), 6});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const InfraredScan s = infrared_scan(ps, 1.0 / (2.0 * d), L);
  CHECK(s.positive);
  CHECK(s.F0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.c_est == doctest::Approx(2.0 / (d * M_PI * M_PI)).epsilon(1e-12));
  // every nonzero coordinate of the minimizer is pi
  bool any_nonzero = false;
  for (int j = 0; j < d; ++j) {
    if (s.argmin_k[j] != 0.0) {
      any_nonzero = true;
      CHECK(std::fabs(s.argmin_k[j]) == doctest::Approx(M_PI).epsilon(1e-12));
    }
  }
  CHECK(any_nonzero);
}

TEST_CASE("transform identity residual is controlled by the dropped tail") {
  const GSeries g = enumerate_G({2, Rational(1, 3), 6});
  const SpatialSeries F = invert_to_F(g);
  const FourierIdentityCheck c = fourier_identity_check(g, F, 0.08, 8);
  CHECK(c.L == 8);
  CHECK(c.max_residual >= 0);
  CHECK(c.max_residual <= c.tail_bound);
}

TEST_CASE("direction set is deterministic and normalized") {
  const auto d1 = make_directions(3, 16);
  const auto d2 = make_directions(3, 16);
  REQUIRE(d1.size() == d2.size());
  CHECK(d1.size() == 3 + 1 + 16);  // axes, diagonal, random
  for (std::size_t i = 0; i < d1.size(); ++i) {
    CHECK(std::sqrt(d1[i].norm2()) == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j < 3; ++j) CHECK(d1[i][j] == d2[i][j]);
  }
  // first directions are the coordinate axes
  CHECK(d1[0][0] == 1.0);
  CHECK(d1[1][1] == 1.0);
  CHECK(d1[2][2] == 1.0);
}

TEST_CASE("shell maxima and log spacing") {
  const auto radii = log_spaced(0.1, 0.4, 3);
  REQUIRE(radii.size() == 3);
  CHECK(radii.front() == doctest::Approx(0.1));
  CHECK(radii.back() == doctest::Approx(0.4));
  CHECK(radii[1] == doctest::Approx(0.2));  // geometric midpoint

  const auto dirs = make_directions(2, 4);
  const auto shells = shell_max(radii, dirs,
                                [](const TorusPoint& k) { return k.norm2(); });
  REQUIRE(shells.size() == 3);
  for (std::size_t i = 0; i < shells.size(); ++i) {
    CHECK(shells[i].r == doctest::Approx(radii[i]));
    // |r*dir|^2 = r^2 for unit directions
    CHECK(shells[i].value == doctest::Approx(radii[i] * radii[i]).epsilon(1e-12));
  }
}

TEST_CASE("remainder transform scales like k to the fourth") {
  // both discrete moments of E vanish, so Ehat(k) = O(|k|^4) and each
  // derivative drops one power
  const GSeries g = enumerate_G({5, Rational(1, 10), 6});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const Decomposition dec = build_E(ps, Rational(1, 10));
  REQUIRE(!dec.E.empty());
  const EhatScalingAudit audit = ehat_scaling_audit(dec.E);
  REQUIRE(audit.fits.size() == 4);
  const double expected[] = {4.0, 3.0, 2.0, 1.0};
  for (int a = 0; a <= 3; ++a) {
    CHECK(audit.fits[a].order == a);
    CHECK(std::fabs(audit.fits[a].slope - expected[a]) <= 0.15);
    CHECK(audit.fits[a].amplitude > 0);
    CHECK(audit.fits[a].shells.size() == 9);
  }
}

TEST_CASE("transported remainder stays integrable on the grid") {
  const GSeries g = enumerate_G({5, Rational(1, 10), 6});
  const PiSeries ps = pi_from_F(invert_to_F(g));
  const double z = 0.1;
  const Decomposition dec = build_E(ps, Rational(1, 10));
  const double mu = to_double(dec.mu);
  const FhatL1Audit a8 = fhat_l1_audit(dec.E, g, z, mu, 8);
  REQUIRE(a8.rows.size() == 7);  // patterns: (), 1, 2, 11, 3, 21, 111
  std::set<std::vector<int>> seen;
  for (const auto& r : a8.rows) {
    CHECK(r.l1_mean >= 0);
    CHECK(std::isfinite(r.l1_mean));
    seen.insert(r.pattern);
  }
  CHECK(seen.size() == 7);
  // refining the grid does not blow up the means (uniform integrability)
  const FhatL1Audit a16 = fhat_l1_audit(dec.E, g, z, mu, 16);
  for (std::size_t i = 0; i < a8.rows.size(); ++i) {
    const double c = a8.rows[i].l1_mean, f = a16.rows[i].l1_mean;
    CHECK(f <= 2.0 * c + 1e-12);
  }
}

TEST_CASE("free-resolvent transform derivatives via finite differences") {
  const int d = 3;
  const double mu = 0.8 / 6.0;
  TorusPoint k(d);
  k[0] = 0.4;
  k[1] = -0.3;
  k[2] = 0.9;
  // build Chat as a HatEvaluator-free closure and difference it
  const auto chat = [&](const TorusPoint& q) {
    return 1.0 / (1.0 - mu * 2.0 * d * dhat(d, q));
  };
  const double h = 1e-5;
  for (int axis : {0, 1, 2}) {
    MultiIndex a(d);
    a[axis] = 1;
    TorusPoint kp = k, km = k;
    kp[axis] += h;
    km[axis] -= h;
    const double fd = (chat(kp) - chat(km)) / (2.0 * h);
    CHECK(chat_deriv(d, mu, k, a) == doctest::Approx(fd).epsilon(1e-6));
  }
  MultiIndex a2(d);
  a2[0] = 2;
  TorusPoint kp = k, km = k;
  kp[0] += h;
  km[0] -= h;
  const double fd2 =
      (chat(kp) - 2.0 * chat(k) + chat(km)) / (h * h);
  CHECK(chat_deriv(d, mu, k, a2) == doctest::Approx(fd2).epsilon(1e-5));
  MultiIndex a11(d);
  a11[0] = 1;
  a11[1] = 1;
  TorusPoint kpp = k, kpm = k, kmp = k, kmm = k;
  kpp[0] += h; kpp[1] += h;
  kpm[0] += h; kpm[1] -= h;
  kmp[0] -= h; kmp[1] += h;
  kmm[0] -= h; kmm[1] -= h;
  const double fd11 =
      (chat(kpp) - chat(kpm) - chat(kmp) + chat(kmm)) / (4.0 * h * h);
  CHECK(chat_deriv(d, mu, k, a11) == doctest::Approx(fd11).epsilon(1e-5));
}
