#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crdet/functionals.hpp"
#include "crdet/spectral_zeta.hpp"

using namespace crdet;

namespace {

ContextPtr ctx() {
  static ContextPtr c = make_context(4, 32, 33);
  return c;
}

Eigen::VectorXd zero_coeffs() { return Eigen::VectorXd::Zero(ctx()->dim()); }

Eigen::VectorXd coeffs_re_z1(double eps) {
  Eigen::VectorXd u = zero_coeffs();
  u[1] = eps;
  return u;
}

ContactState state_of(const Eigen::VectorXd& u) { return ContactState(ctx(), u); }

}  // namespace

TEST_CASE("tilde A1") {
  CHECK(tildeA1(state_of(zero_coeffs())) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // constant c: 2c * 16 pi^2 + 48 pi^2 c = 80 pi^2 c
  for (double c : {0.2, -0.35}) {
    Eigen::VectorXd u = zero_coeffs();
    u[0] = c;
    CHECK(tildeA1(state_of(u)) == doctest::Approx(80.0 * kPiSq * c).epsilon(1e-12));
  }

  // series oracle along z1 + conj(z1): 80 pi^2 e^2 - 16 pi^2 e^4 + (32/3) pi^2 e^6
  for (double eps : {0.02, 0.04}) {
    const double expect =
        80.0 * kPiSq * eps * eps - 16.0 * kPiSq * std::pow(eps, 4) +
        (32.0 / 3.0) * kPiSq * std::pow(eps, 6);
    CHECK(tildeA1(state_of(coeffs_re_z1(eps))) ==
          doctest::Approx(expect).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("tilde A2") {
  CHECK(tildeA2(state_of(zero_coeffs())) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  Eigen::VectorXd uc = zero_coeffs();
  uc[0] = 0.8;
  CHECK(tildeA2(state_of(uc)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // exact value along z1 + conj(z1): -(8 pi^2 / 3) e^4 with no other terms
  for (double eps : {0.1, 0.3}) {
    CHECK(tildeA2(state_of(coeffs_re_z1(eps))) ==
          doctest::Approx(-(8.0 * kPiSq / 3.0) * std::pow(eps, 4)).epsilon(1e-11));
  }

  // second variation: A2(eps w) = eps^2 (R |grad w|_2^2 - 2 |Delta w|_2^2) + O(eps^3)
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.5);
    u[0] = 0.0;
    ContactState st = state_of(u);
    const auto& wg = ctx()->grid.weights();
    double g2 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < ctx()->nodes(); ++i) {
      g2 += wg[i] * st.gsq[i];
      d2 += wg[i] * st.Dw[i] * st.Dw[i];
    }
    const double hess = kWebsterR * g2 - 2.0 * d2;
    const double eps = 1e-3;
    const double val = tildeA2(state_of((eps * u).eval()));
    CHECK(val == doctest::Approx(eps * eps * hess).epsilon(1e-3).scale(1e-8));
  }
}

TEST_CASE("tilde A3") {
  CHECK(tildeA3(state_of(zero_coeffs())) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  Eigen::VectorXd uc = zero_coeffs();
  uc[0] = 1.1;
  CHECK(tildeA3(state_of(uc)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  CHECK(tildeA3(state_of(coeffs_re_z1(0.4))) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // symbolic oracle: assemble the integrand exactly and integrate by moments
  Rng rng(13);
  double largest = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.4);
    ContactState st = state_of(u);
    PolyFn w;
    for (int k = 0; k < ctx()->dim(); ++k) {
      if (u[k] != 0.0) w += u[k] * ctx()->basis.real_element(k);
    }
    PolyFn tw = apply_field(w, Field::T);
    PolyFn integrand =
        tw * (PolyFn(kWebsterR) - (1.0 / 3.0) * horizontal_grad_sq(w) - sublaplacian(w));
    const double exact = 2.0 * integrand.integrate();
    CHECK(tildeA3(st) == doctest::Approx(exact).epsilon(1e-10).scale(1.0));
    largest = std::max(largest, std::abs(exact));
  }
  CHECK(largest > 1e-8);  // the functional is not identically zero
}

TEST_CASE("functional II and the Beckner-Onofri bound") {
  CHECK(functional_II(state_of(zero_coeffs())) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  Eigen::VectorXd uc = zero_coeffs();
  uc[0] = -0.6;
  CHECK(functional_II(state_of(uc)) == doctest::Approx(0.0).scale(kPiSq).epsilon(1e-13));

  Rng rng(2024);
  double most_negative = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, rng.uniform(0.05, 1.0));
    most_negative = std::min(most_negative, functional_II(state_of(u)));
  }
  CHECK(most_negative >= -1e-9);
}

TEST_CASE("functional F assembly and scaling invariance") {
  FunctionalReport r0 = functional_F(state_of(zero_coeffs()), 1.0, 0.5);
  CHECK(r0.F == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(r0.a == doctest::Approx(1.0).epsilon(1e-15));

  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.5);
    const double c = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd uc = u;
    uc[0] += c;
    const double f1 = functional_F(state_of(u), 1.0, 0.3).F;
    const double f2 = functional_F(state_of(uc), 1.0, 0.3).F;
    CHECK(std::abs(f1 - f2) < 1e-9 * (1.0 + std::abs(f1)));
  }

  // report identity F = c1 II + c2 III + c3 IV
  Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.4);
  FunctionalReport r = functional_F(state_of(u), 0.7, 0.2);
  CHECK(r.F == doctest::Approx(r.c1 * r.II + 0.7 * r.III + 0.2 * r.IV).epsilon(1e-15));
  CHECK(r.III == r.A2);
  CHECK(r.IV == -r.A3);

  // with c3 = 0, c2 = 1 the quartic flat direction is still a maximum
  for (double eps : {0.05, 0.1}) {
    CHECK(functional_F(state_of(coeffs_re_z1(eps)), 1.0, 0.0).F < 0.0);
  }

  // normalized volume mode reports the gauge-fixed functionals
  Eigen::VectorXd ub = random_pluri_coeffs(*ctx(), rng, 0.3);
  ub[0] = 0.4;
  FunctionalReport rn = functional_F(state_of(ub), 1.0, 0.0, VolumeMode::Normalized);
  FunctionalReport rf = functional_F(state_of(ub), 1.0, 0.0, VolumeMode::Free);
  CHECK(rn.F == doctest::Approx(rf.F).epsilon(1e-9));
  CHECK(rn.II == doctest::Approx(rf.II).epsilon(1e-9));
}

TEST_CASE("Polyakov log det ratio") {
  CHECK(polyakov_log_det_ratio(state_of(zero_coeffs()), 1.0, 0.5) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  // constant w: ratio = c1 * 80 pi^2 c = -(10/3) c, matching the zeta-side
  // scaling ln(det/det_scaled) = 2 c zeta(0)
  for (double c : {0.3, -0.4}) {
    Eigen::VectorXd u = zero_coeffs();
    u[0] = c;
    const double ratio = polyakov_log_det_ratio(state_of(u), 0.9, 0.1);
    CHECK(ratio == doctest::Approx(-(10.0 / 3.0) * c).epsilon(1e-12));
    const double zeta0 = sphere_zeta_continued(0.0, 24).value;
    const double zp0 = sphere_zeta_prime_zero(24);
    // eigenvalues scale by e^{-2c} under e^c theta
    const double zp_scaled = zp0 - std::log(std::exp(-2.0 * c)) * zeta0;
    const double lhs = (-zp0) - (-zp_scaled);  // ln det - ln det_scaled
    CHECK(ratio == doctest::Approx(lhs).epsilon(1e-9));
  }

  // relation to F: F = ratio - zeta(0) ln(avg e^{2w})
  Rng rng(5150);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.5);
    u[0] = rng.uniform(-0.3, 0.3);
    ContactState st = state_of(u);
    const double f = functional_F(st, 0.8, 0.15).F;
    const double ratio = polyakov_log_det_ratio(st, 0.8, 0.15);
    CHECK(std::abs(f - (ratio + (5.0 / 3.0) * st.log_mean_exp2w())) <
          1e-12 * (1.0 + std::abs(f)));
  }
}

TEST_CASE("gradient of F") {
  // critical point at w = 0
  Eigen::VectorXd g0 = grad_F(state_of(zero_coeffs()), 1.0, 0.2);
  CHECK(g0.cwiseAbs().maxCoeff() < 1e-10);

  Rng rng(999);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.3);
    ContactState st = state_of(u);
    Eigen::VectorXd g = grad_F(st, 1.0, 0.25);
    CHECK(std::abs(g[0]) < 1e-10);  // scaling invariance
    const double h = 1e-5;
    const double floor = 1e-2 * (1.0 + g.cwiseAbs().maxCoeff());
    for (int k = 1; k < ctx()->dim(); k += 4) {
      Eigen::VectorXd up = u, um = u;
      up[k] += h;
      um[k] -= h;
      const double fd = (functional_F(state_of(up), 1.0, 0.25).F -
                         functional_F(state_of(um), 1.0, 0.25).F) /
                        (2.0 * h);
      const double scale = std::max({std::abs(g[k]), std::abs(fd), floor});
      CHECK(std::abs(g[k] - fd) / scale < 1e-5);
    }
  }
}

TEST_CASE("Hessian diagonal of F") {
  Rng rng(404);
  Eigen::VectorXd u = random_pluri_coeffs(*ctx(), rng, 0.3);
  Eigen::VectorXd hd = hess_diag_F(state_of(u), 1.0, 0.2);
  const double h = 1e-4;
  for (int k = 1; k < ctx()->dim(); k += 5) {
    Eigen::VectorXd up = u, um = u;
    up[k] += h;
    um[k] -= h;
    const double f0 = functional_F(state_of(u), 1.0, 0.2).F;
    const double fp = functional_F(state_of(up), 1.0, 0.2).F;
    const double fm = functional_F(state_of(um), 1.0, 0.2).F;
    const double fd = (fp - 2.0 * f0 + fm) / (h * h);
    CHECK(hd[k] == doctest::Approx(fd).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("cocycle defects") {
  Rng rng(606);
  Eigen::VectorXd w1 = random_pluri_coeffs(*ctx(), rng, 0.3);
  Eigen::VectorXd w0 = zero_coeffs();
  CHECK(cocycle_defect(ctx(), w1, w0, CocyclePart::A1) < 1e-10);
  CHECK(cocycle_defect(ctx(), w1, w0, CocyclePart::A2) < 1e-10);

  Eigen::VectorXd ca = zero_coeffs(), cb = zero_coeffs();
  ca[0] = 0.3;
  cb[0] = -0.7;
  CHECK(cocycle_defect(ctx(), ca, cb, CocyclePart::A1) < 1e-12);
  CHECK(cocycle_defect(ctx(), ca, cb, CocyclePart::A2) < 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd a = random_pluri_coeffs(*ctx(), rng, 0.3);
    Eigen::VectorXd b = random_pluri_coeffs(*ctx(), rng, 0.3);
    CHECK(cocycle_defect(ctx(), a, b, CocyclePart::A1) < 1e-6);
    CHECK(cocycle_defect(ctx(), a, b, CocyclePart::A2) < 1e-6);
  }
}
