#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crdet/riemann_zeta.hpp"
#include "crdet/spectral_zeta.hpp"

using namespace crdet;

TEST_CASE("Riemann zeta anchors") {
  CHECK(riemann_zeta(2.0) == doctest::Approx(kPiSq / 6.0).epsilon(1e-14));
  CHECK(riemann_zeta(0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(riemann_zeta(-1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
  CHECK(riemann_zeta(-2.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(riemann_zeta(-3.0) == doctest::Approx(1.0 / 120.0).epsilon(1e-12));
  CHECK(riemann_zeta(3.0) == doctest::Approx(1.2020569031595942854).epsilon(1e-14));
  CHECK(riemann_zeta(1.5) == doctest::Approx(2.6123753486854883433).epsilon(1e-14));
  CHECK(riemann_zeta(0.5) == doctest::Approx(-1.4603545088095868129).epsilon(1e-13));
  CHECK(riemann_zeta(5.0) == doctest::Approx(1.0369277551433699263).epsilon(1e-14));
  CHECK(riemann_zeta(30.0) == doctest::Approx(1.0000000009313274324).epsilon(1e-15));
  CHECK_THROWS_AS(riemann_zeta(1.0), Error);

  // near the pole: zeta(1 + eps) - 1/eps -> gamma
  CHECK(riemann_zeta(1.0 + 1e-5) - 1.0e5 == doctest::Approx(euler_gamma()).epsilon(1e-4));
}

TEST_CASE("Riemann zeta derivative and gamma") {
  CHECK(riemann_zeta_deriv(0.0) ==
        doctest::Approx(-0.91893853320467274178).epsilon(1e-13));
  CHECK(riemann_zeta_deriv(-1.0) ==
        doctest::Approx(-0.16542114370045092921).epsilon(1e-12));
  CHECK(riemann_zeta_deriv(2.0) ==
        doctest::Approx(-0.93754825431584375370).epsilon(1e-13));
  CHECK(euler_gamma() == doctest::Approx(0.57721566490153286061).epsilon(1e-15));

  // derivative consistency by central difference
  for (double s : {-2.5, -0.5, 0.25, 2.0, 6.0}) {
    const double h = 1e-6;
    const double fd = (riemann_zeta(s + h) - riemann_zeta(s - h)) / (2.0 * h);
    CHECK(riemann_zeta_deriv(s) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("truncated spectral zeta") {
  SpectralSequence seq = SpectralSequence::sphere(100000, 1.0);
  seq.validate();
  CHECK(seq.kernel_dim == 1);

  // single term: 2*2/2^2 = 1
  CHECK(zeta_truncated(seq, 2.0, 1).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zeta_truncated(seq, 2.0, 0).value == 0.0);

  const double v4 = zeta_truncated(seq, 2.0, 10000).value;
  const double v5 = zeta_truncated(seq, 2.0, 100000).value;
  CHECK(std::abs(v4 - v5) < 1e-7);
  CHECK(v4 < v5);  // monotone upward in N for s > 1

  // closed form at s = 2: sum 2/(j^2 (j+1)) telescopes to pi^2/3 - 2
  CHECK(zeta_truncated_extrapolated(seq, 2.0, 100000).value ==
        doctest::Approx(kPiSq / 3.0 - 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(zeta_truncated_extrapolated(seq, 1.0, 100000), Error);
  CHECK_THROWS_AS(zeta_truncated_extrapolated(seq, 2.0, 8), Error);
}

TEST_CASE("continued sphere zeta") {
  CHECK(sphere_zeta_continued(0.0, 20).value == doctest::Approx(-5.0 / 3.0).epsilon(1e-12));

  // closed forms: zeta_A(2) = pi^2/3 - 2, zeta_A(3) = 8 + 2 zeta_R(3) - pi^2
  CHECK(sphere_zeta_continued(2.0, 24).value ==
        doctest::Approx(kPiSq / 3.0 - 2.0).epsilon(1e-13));
  CHECK(sphere_zeta_continued(3.0, 24).value ==
        doctest::Approx(8.0 + 2.0 * riemann_zeta(3.0) - kPiSq).epsilon(1e-13));

  // two-method agreement
  SpectralSequence seq = SpectralSequence::sphere(100000, 1.0);
  for (double s : {1.5, 2.0, 3.0}) {
    const double a = sphere_zeta_continued(s, 24).value;
    const double b = zeta_truncated_extrapolated(seq, s, 100000).value;
    CHECK(std::abs(a - b) / std::abs(a) < 1e-9);
  }

  // residue 1 at s = 1
  double last = 0.0;
  for (int k = 3; k <= 6; ++k) {
    const double s = 1.0 + std::pow(10.0, -k);
    last = (s - 1.0) * sphere_zeta_continued(s, 24).value;
  }
  CHECK(last == doctest::Approx(1.0).epsilon(1e-4));

  // poles of reduced terms rejected; order guard
  CHECK_THROWS_AS(sphere_zeta_continued(0.5, 20), Error);
  CHECK_THROWS_AS(sphere_zeta_continued(1.0, 20), Error);
  CHECK_THROWS_AS(sphere_zeta_continued(2.0, 2), Error);

  // kappa scaling: zeta_kappa(s) = kappa^{-s} zeta(s); zeta(0) unchanged
  CHECK(sphere_zeta_continued(2.0, 24, 4.0).value ==
        doctest::Approx(std::pow(4.0, -2.0) * sphere_zeta_continued(2.0, 24).value)
            .epsilon(1e-14));
  CHECK(sphere_zeta_continued(0.0, 24, 4.0).value ==
        doctest::Approx(-5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("zeta prime at zero and the determinant") {
  const double a = sphere_zeta_prime_zero(20);
  const double b = sphere_zeta_prime_zero(30);
  CHECK(std::abs(a - b) < 1e-10);

  CHECK(sphere_det(24) > 0.0);
  CHECK(sphere_det(24) == doctest::Approx(std::exp(-a)).epsilon(1e-10));

  // independent oracle: differentiate the continued zeta at +-1e-5
  const double h = 1e-5;
  const double fd =
      (sphere_zeta_continued(h, 24).value - sphere_zeta_continued(-h, 24).value) / (2.0 * h);
  CHECK(std::abs(fd - a) < 1e-6);

  // kappa shift: zeta'_kappa(0) = zeta'(0) - ln(kappa) zeta(0)
  CHECK(sphere_zeta_prime_zero(24, 2.0) ==
        doctest::Approx(a - std::log(2.0) * (-5.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("conformal index") {
  CHECK(conformal_index(16.0 * kPiSq) == doctest::Approx(-5.0 / 3.0).epsilon(1e-14));
  CHECK(conformal_index(0.0) == -1.0);
  CHECK(conformal_index(24.0 * kPiSq) == doctest::Approx(-2.0).epsilon(1e-14));

  // internal Theorem-1 consistency
  CHECK(std::abs(sphere_zeta_continued(0.0, 24).value - conformal_index(16.0 * kPiSq)) < 1e-10);
}

TEST_CASE("determinant scaling law and S invariance") {
  ScalingCheck c1 = det_scaling_check(1.0, 24);
  CHECK(c1.defect == 0.0);
  for (double c : {0.5, 2.0, 10.0}) {
    ScalingCheck sc = det_scaling_check(c, 24);
    CHECK(sc.defect < 1e-8);
    CHECK(sc.s_defect < 1e-8);
  }
}

TEST_CASE("error estimates refine monotonically") {
  double prev = std::numeric_limits<double>::infinity();
  for (int M : {6, 10, 16, 24}) {
    const double e = sphere_zeta_continued(2.0, M).error_estimate;
    CHECK(e <= prev * (1.0 + 1e-12));
    prev = e;
  }
  SpectralSequence seq = SpectralSequence::sphere(100000, 1.0);
  prev = std::numeric_limits<double>::infinity();
  for (long N : {100L, 1000L, 10000L}) {
    const double e = zeta_truncated(seq, 2.0, N).error_estimate;
    CHECK(e < prev);
    prev = e;
  }
}
