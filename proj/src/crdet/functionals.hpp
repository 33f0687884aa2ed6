#pragma once

#include <optional>
#include <string>

#include "conformal_ops.hpp"

namespace crdet {

// c1 = -1/(24 pi^2), fixed by the conformal index on the sphere.
// The quadratic forms below use the P' normalization kPaneitzKappa: the unit
// spectral convention feeds the zeta side, the Beckner-Onofri bound pins the
// factor 4 here.
inline constexpr double kC1 = -1.0 / (24.0 * kPiSq);

enum class VolumeMode { Free, Normalized };

struct FunctionalReport {
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double II = 0.0, III = 0.0, IV = 0.0;
  double F = 0.0;
  double c1 = kC1, c2 = 0.0, c3 = 0.0;
  double a = 1.0;  // total Q' / 16 pi^2
  VolumeMode volume_mode = VolumeMode::Free;
  std::optional<double> grad_norm;
  std::optional<double> cocycle_A1;
  std::optional<double> cocycle_A2;
};

double tildeA1(const ContactState& state);
double tildeA2(const ContactState& state);
double tildeA3(const ContactState& state);

double functional_II(const ContactState& state);
double functional_III(const ContactState& state);
double functional_IV(const ContactState& state);

FunctionalReport functional_F(const ContactState& state, double c2, double c3,
                              VolumeMode mode = VolumeMode::Free);

// c1 A1 + c2 A2 - c3 A3; relates to F by F = ratio - zeta(0) ln(avg e^{2w}).
double polyakov_log_det_ratio(const ContactState& state, double c2, double c3);

// Analytic gradient of F in the real coefficients; the constants coordinate
// vanishes identically (scaling invariance).
Eigen::VectorXd grad_F(const ContactState& state, double c2, double c3);

// Full analytic Hessian of F in the real coefficients (dense, assembled from
// the same grid caches as the gradient).
Eigen::MatrixXd hess_F(const ContactState& state, double c2, double c3);

// Diagonal of the analytic Hessian of F.
Eigen::VectorXd hess_diag_F(const ContactState& state, double c2, double c3);

enum class CocyclePart { A1, A2 };

// | A^theta(w1+w2) - A^theta(w1) - A^{e^{w1} theta}(w2) | with the second
// evaluation assembled from the transformation laws in the w1 frame.
// A3 is unsupported: the conformal law of T is not part of the model.
double cocycle_defect(const ContextPtr& ctx, const Eigen::VectorXd& w1,
                      const Eigen::VectorXd& w2, CocyclePart part);

}  // namespace crdet
