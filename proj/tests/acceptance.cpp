// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "crdet/extremal.hpp"
#include "crdet/riemann_zeta.hpp"
#include "crdet/spectral_zeta.hpp"
#include "crdet/synthetic.hpp"

using namespace crdet;

namespace {

int failures = 0;

void criterion(int number, const std::string& label,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s (%s; %.2f s)\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string run_cli(const std::string& args, int& exit_code) {
  const std::string cmd = std::string(CRDET_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  if (!p) {
    exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

double extract_number(const std::string& text, const std::string& key) {
  const auto pos = text.find(key);
  if (pos == std::string::npos) throw Error("missing key " + key);
  return std::stod(text.substr(pos + key.size()));
}

char fmt_buf[256];
std::string fmt(const char* f, double a, double b = 0.0) {
  std::snprintf(fmt_buf, sizeof(fmt_buf), f, a, b);
  return fmt_buf;
}

}  // namespace

int main() {
  criterion(1, "sphere conformal index -5/3 through cmd_zeta", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    const std::string out = run_cli("zeta --s 0", code);
    const double z0 = extract_number(out, "\"zeta0\": ");
    const double idx = conformal_index(16.0 * kPiSq);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    d = fmt("zeta0 defect %.2e, index defect %.2e", std::abs(z0 + 5.0 / 3.0),
            std::abs(idx + 5.0 / 3.0));
    return code == 0 && std::abs(z0 + 5.0 / 3.0) < 1e-10 &&
           std::abs(idx + 5.0 / 3.0) < 4e-16 &&
           out.find("\"index_check\": \"PASS\"") != std::string::npos && secs < 1.0;
  });

  criterion(2, "two-method zeta agreement at s in {1.5, 2, 3}", [](std::string& d) {
    SpectralSequence seq = SpectralSequence::sphere(100000, 1.0);
    double worst = 0.0;
    for (double s : {1.5, 2.0, 3.0}) {
      const double a = sphere_zeta_continued(s, 24).value;
      const double b = zeta_truncated_extrapolated(seq, s, 100000).value;
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    d = fmt("worst relative gap %.2e", worst);
    return worst < 1e-9;
  });

  criterion(3, "determinant scaling law and S invariance", [](std::string& d) {
    double worst = 0.0;
    for (double c : {0.5, 2.0, 10.0}) {
      ScalingCheck sc = det_scaling_check(c, 24);
      worst = std::max({worst, sc.defect, sc.s_defect});
    }
    d = fmt("worst relative defect %.2e", worst);
    return worst < 1e-8;
  });

  ContextPtr ctx4 = make_context(4, 32, 33);

  criterion(4, "Beckner-Onofri positivity over 100 seeded states", [&](std::string& d) {
    Rng rng(20240801);
    double most_negative = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd u = random_pluri_coeffs(*ctx4, rng, rng.uniform(0.05, 1.0));
      most_negative = std::min(most_negative, functional_II(ContactState(ctx4, u)));
    }
    d = fmt("most negative II %.2e", most_negative);
    return most_negative >= -1e-9;
  });

  criterion(5, "total Q' invariance of the projected pairing", [&](std::string& d) {
    Rng rng(5);
    Eigen::VectorXd one = Eigen::VectorXd::Zero(ctx4->dim());
    one[0] = 1.0;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      ContactState st(ctx4, random_pluri_coeffs(*ctx4, rng, 0.6));
      worst = std::max(worst, std::abs(projected_Qprime_pairing(st, one, kPaneitzKappa) -
                                       kTotalQprime) /
                                  kTotalQprime);
    }
    d = fmt("worst relative defect %.2e", worst);
    return worst < 1e-9;
  });

  criterion(6, "scaling invariance of F over 50 seeded samples", [&](std::string& d) {
    Rng rng(6);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd u = random_pluri_coeffs(*ctx4, rng, 0.5);
      const double c = rng.uniform(-1.0, 1.0);
      Eigen::VectorXd uc = u;
      uc[0] += c;
      const double f1 = functional_F(ContactState(ctx4, u), 1.0, 0.3).F;
      const double f2 = functional_F(ContactState(ctx4, uc), 1.0, 0.3).F;
      worst = std::max(worst, std::abs(f1 - f2) / (1.0 + std::abs(f1)));
    }
    d = fmt("worst defect %.2e", worst);
    return worst < 1e-9;
  });

  criterion(7, "finite-dimensional variation identities with O(step^2) refinement",
            [](std::string& d) {
    ContextPtr c3 = make_context(3, 24, 25);
    Rng rng(7);
    double worst = 0.0, worst_ratio_lo = 1e300, worst_ratio_hi = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      ContactState st(c3, random_pluri_coeffs(*c3, rng, 0.3));
      for (double t : {0.1, 1.0}) {
        VariationDefects fine = trace_variation_checks(st, t, 1e-4);
        VariationDefects coarse = trace_variation_checks(st, t, 1e-3);
        worst = std::max({worst, fine.dtau, fine.dA, fine.dtrace});
        const double ratio = (coarse.dtau + coarse.dA + coarse.dtrace) /
                             std::max(fine.dtau + fine.dA + fine.dtrace, 1e-300);
        worst_ratio_lo = std::min(worst_ratio_lo, ratio);
        worst_ratio_hi = std::max(worst_ratio_hi, ratio);
      }
    }
    d = fmt("worst defect %.2e, step ratios in [%.0f", worst, worst_ratio_lo) +
        fmt(", %.0f]", worst_ratio_hi);
    return worst < 1e-6 && worst_ratio_lo > 20.0 && worst_ratio_hi < 500.0;
  });

  criterion(8, "cocycle identity for A1 and A2 over 10 seeded pairs", [&](std::string& d) {
    Rng rng(8);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd a = random_pluri_coeffs(*ctx4, rng, 0.3);
      Eigen::VectorXd b = random_pluri_coeffs(*ctx4, rng, 0.3);
      worst = std::max(worst, cocycle_defect(ctx4, a, b, CocyclePart::A1));
      worst = std::max(worst, cocycle_defect(ctx4, a, b, CocyclePart::A2));
    }
    d = fmt("worst defect %.2e", worst);
    return worst < 1e-6;
  });

  criterion(9, "analytic gradient against central differences (20 states)",
            [&](std::string& d) {
    Rng rng(9);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd u = random_pluri_coeffs(*ctx4, rng, 0.3);
      ContactState st(ctx4, u);
      Eigen::VectorXd g = grad_F(st, 1.0, 0.25);
      const double h = 1e-5;
      const double floor = 1e-2 * (1.0 + g.cwiseAbs().maxCoeff());
      for (int k = 0; k < ctx4->dim(); k += 2) {
        Eigen::VectorXd up = u, um = u;
        up[k] += h;
        um[k] -= h;
        const double fd = (functional_F(ContactState(ctx4, up), 1.0, 0.25).F -
                           functional_F(ContactState(ctx4, um), 1.0, 0.25).F) /
                          (2.0 * h);
        const double scale = std::max({std::abs(g[k]), std::abs(fd), floor});
        worst = std::max(worst, std::abs(g[k] - fd) / scale);
      }
    }
    d = fmt("worst componentwise relative error %.2e", worst);
    return worst < 1e-5;
  });

  criterion(10, "maximizer returns to the round sphere from 10 seeded inits",
            [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    ContextPtr copt = make_context(4, 20, 21);
    Rng rng(10);
    double worst_norm = 0.0, worst_F = -1e300, worst_res = 0.0;
    bool all = true;
    for (int trial = 0; trial < 10; ++trial) {
      ContactState init(copt, random_pluri_coeffs(*copt, rng, 0.1));
      AscentTrace tr = maximize_F(init, 1.0, 0.0);
      all = all && tr.converged;
      Eigen::VectorXd w = tr.iterates.back().u;
      w[0] = 0.0;
      worst_norm = std::max(worst_norm, w.norm());
      worst_F = std::max(worst_F, tr.iterates.back().F);
      worst_res = std::max(
          worst_res, el_residual(ContactState(copt, tr.iterates.back().u), 1.0, 0.0));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    d = fmt("worst |w*| %.2e, EL residual %.2e", worst_norm, worst_res) +
        fmt(", F <= %.1e", worst_F) + fmt(", %.0f s", secs);
    return all && worst_norm < 1e-4 && worst_F <= 1e-8 && worst_res < 1e-6 && secs < 60.0;
  });

  criterion(11, "feasibility logic on the sphere and a synthetic a = 0 model",
            [](std::string& d) {
    bool sphere_ok = true;
    for (double c3 : {0.0, 1e-4, 1e-3, 0.1, 1.0, 10.0}) {
      sphere_ok = sphere_ok && !condition_feasible(1.0, c3, 1.0, 1.0 / 3.0).feasible;
    }
    const std::string toy = R"({"dim": 2, "weights": [1, 1], "R": [0, 0],
      "T": [[0, 0], [0, 1]], "Delta_b": [[0, 0], [0, 1]], "A": [[0, 0], [0, 2]],
      "Qprime_total": 0.0})";
    SyntheticModel m = SyntheticModel::parse(toy, "toy");
    FeasibilityReport r = condition_feasible(1.0, 1e-3, m.a(), 1.0 / 3.0, m.lambda_best());
    d = fmt("sphere infeasible for all c3: %.0f; synthetic bound %.3e", sphere_ok ? 1.0 : 0.0,
            r.bound);
    return sphere_ok && r.feasible;
  });

  criterion(12, "P' normalization: 4 j(j+1) symbolically and in cmd_spectrum",
            [](std::string& d) {
    double worst = 0.0;
    for (int j = 1; j <= 6; ++j) {
      PolyFn zj = PolyFn::holo(j, 0);
      PolyFn resid = pprime_formula(zj) - 4.0 * j * (j + 1.0) * zj;
      worst = std::max(worst, resid.max_abs_coeff());
    }
    int code = 0;
    const std::string out = run_cli("spectrum --degree 4", code);
    const bool printed = out.find("\"pprime_lambda\": 8.0") != std::string::npos &&
                         out.find("\"ratio\": 4.0") != std::string::npos;
    d = fmt("worst symbolic residual %.2e", worst) +
        (printed ? ", ratio table printed" : ", ratio table MISSING");
    return worst < 1e-12 && code == 0 && printed;
  });

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures;
}
