#pragma once

#include <functional>

#include "functionals.hpp"

namespace crdet {

// Best constant in || T f ||_2 <= lambda || Delta_b f ||_2 over the
// non-constant span; equals 1 on the sphere for every truncation.
double best_constant_lambda(const SphereContext& ctx);
double best_constant_lambda(const Eigen::MatrixXd& K_T, const Eigen::MatrixXd& K_D);

struct FeasibilityReport {
  double c2 = 0.0, c3 = 0.0, a = 0.0;
  double lambda = 1.0;
  double mu = 1.0 / 3.0;
  double bound = 0.0;        // mu (sqrt(25 c2^2 + c2 (1-a)/(3 pi^2)) - 5 c2)
  bool feasible = false;     // c3 < bound
  double alpha_lo = 0.0;     // window from the three coefficient conditions
  double alpha_hi = 0.0;
  bool alpha_window_nonempty = false;
  double window_bound = 0.0;  // sharp c3 threshold for a nonempty window: 3/(2 lambda) (...)
};

FeasibilityReport condition_feasible(double c2, double c3, double a, double mu,
                                     double lambda = 1.0);

struct CoercivityAudit {
  double lhs = 0.0;    // F(w)
  double rhs = 0.0;    // right side of the coercivity chain
  double slack = 0.0;  // rhs - lhs
  double dw2 = 0.0, grad4 = 0.0, grad2 = 0.0;
  double alpha = 0.0;
  double C4 = 0.0, C5 = 0.0;
};

// Evaluates both sides of the coercivity estimate
//   F(w) <= [4 c1 (1-a) + c2 (alpha - 2) + c3 (2 + alpha/3) lambda] |Dw|^2
//         + [c2 (1/alpha - 1/2) + c3 lambda/(3 alpha)] |grad w|_4^4
//         + C4 |grad w|_2^2 + C5
// for mean-zero w on the sphere. Defaults: C4 = R c2 (the exact constant of
// the 2 int R X chain) and C5 = 0.
CoercivityAudit coercivity_audit(const ContactState& state, double alpha, double c2, double c3,
                                 std::optional<double> C4 = std::nullopt, double C5 = 0.0);

// slack of the Young step 2 int Dw |grad w|^2 <= alpha |Dw|^2 + |grad w|^4_4 / alpha
double young_inequality_slack(const ContactState& state, double alpha);

struct AscentOptions {
  double grad_tol = 1e-10;
  int max_iter = 5000;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 60;
  double noise_floor = 1e-13;  // relative objective noise for acceptance at stall
};

struct AscentPoint {
  Eigen::VectorXd u;
  double F = 0.0;
  double grad_norm = 0.0;
};

struct AscentTrace {
  std::vector<AscentPoint> iterates;
  bool converged = false;
  int iterations = 0;
  std::string stop_reason;
};

// Projected ascent of F over mean-zero coefficients with the unit-volume
// constraint carried by the constants coordinate. Directions are scaled by
// the analytic Hessian diagonal (the degree-one block of F is quartically
// flat, where unscaled gradient steps stall); Armijo backtracking from unit
// trial steps keeps F nondecreasing.
AscentTrace maximize_F(const ContactState& init, double c2, double c3,
                       const AscentOptions& opt = {});

// Norm of the constrained gradient of F (the variational form of the
// Euler-Lagrange equation in the truncated model).
double el_residual(const ContactState& state, double c2, double c3);

struct VariationDefects {
  double dtau = 0.0;    // Frobenius defect of the tau variation
  double dA = 0.0;      // Frobenius defect of the A variation
  double dtrace = 0.0;  // absolute defect of the heat-trace variation
};

// Central differences of the conformal family tau_r, A_r = tau_r e^{-2rw} A
// at r = 0 against the closed-form variations
//   dtau = 2 (tau M_w - tau M_w tau), dA = -2 tau M_w A,
//   d Tr[e^{-tA}] = 2 t Tr[M_w A e^{-tA}],
// all exact identities of the discrete model up to differencing error.
VariationDefects trace_variation_checks(const ContactState& state, double t,
                                        double step = 1e-4);

// Generic ascent driver shared with the synthetic-model path.
struct AscentProblem {
  int dim = 0;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;  // optional
  std::function<void(Eigen::VectorXd&)> gauge;                     // optional renormalization
  std::vector<int> frozen;  // coordinates excluded from ascent
};

AscentTrace ascend(const AscentProblem& prob, Eigen::VectorXd u0, const AscentOptions& opt);

}  // namespace crdet
