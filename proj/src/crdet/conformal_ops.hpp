#pragma once

#include "projection.hpp"

namespace crdet {

// Webster scalar curvature and Q' of the standard contact form in this
// normalization (Vol = 4 pi^2, torsion 0).
inline constexpr double kWebsterR = 2.0;
inline constexpr double kQprime = kWebsterR * kWebsterR;           // = 4
inline constexpr double kTotalQprime = kQprime * kVol;             // = 16 pi^2

// Normalization of the operator that pairs with Q': the P' spectrum is
// 4 j(j+1) on degree-j pluriharmonics (pprime_formula), four times the unit
// spectral convention used on the zeta side.
inline constexpr double kPaneitzKappa = 4.0;

struct OperatorMatrix {
  Eigen::MatrixXd mat;        // action in real basis coefficients
  ProjWeight inner_product = ProjWeight::Base;
  double kappa = 1.0;
  Eigen::VectorXd eigenvalues;  // ascending, from the symmetric pencil
};

// Diagonal realization of A_theta: kappa * j(j+1) on degree-j elements.
OperatorMatrix matrix_A(const SphereContext& ctx, double kappa);

// A under e^w theta: weighted projection of e^{-2w} A, self-adjoint for the
// conformal inner product; equals Gram(w)^{-1} * (quadratic form of A).
OperatorMatrix matrix_A_conformal(const ContactState& state, double kappa);

// R transformation law: [R - |grad w|^2 - 2 Delta_b w] e^{-w}, on the grid.
Eigen::VectorXd transformed_R(const ContactState& state);

// Sub-Laplacian law e^{-w} [Delta_b f + grad f . grad w] for f resolvable in
// the basis; f is given by node values.
Eigen::VectorXd transformed_sublap(const ContactState& state, const Eigen::VectorXd& f_values);

// Same law applied within the frame of `state` (base e^w theta) to a second
// perturbation v given by coefficients; used by the cocycle checks.
// Returns e^{-w} [Delta_b v + grad v . grad w + ...] assembled from caches.
Eigen::VectorXd tilde_sublap_coeffs(const ContactState& state, const Eigen::VectorXd& v_coeffs);

// Pairing integral of v against Q' of e^w theta w.r.t. the conformal volume:
//   <v, A w>_nu + integral of v Q' dnu,
// valid for pluriharmonic v; with v = constants it returns 16 pi^2 for any w.
double projected_Qprime_pairing(const ContactState& state, const Eigen::VectorXd& v_coeffs,
                                double kappa);

}  // namespace crdet
