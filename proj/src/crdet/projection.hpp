#pragma once

#include "contact_state.hpp"

namespace crdet {

enum class ProjWeight { Base, Conformal };

// Weighted Gram matrix over the real basis elements: base measure nu or the
// conformal measure e^{2w} nu of the supplied state.
Eigen::MatrixXd gram_matrix(const SphereContext& ctx, ProjWeight weight,
                            const ContactState* state);

// Condition number (eigenvalue ratio) of a symmetric positive definite Gram.
double gram_condition(const Eigen::MatrixXd& G);

// Orthogonal projection of node values onto the pluriharmonic span, as real
// coefficients. Throws IllConditionedGram above condition 1e12.
Eigen::VectorXd project_pluri(const Eigen::VectorXd& values, const ContactState& state,
                              ProjWeight weight);

// Base projection without a state (weight = nu).
Eigen::VectorXd project_pluri_base(const SphereContext& ctx, const Eigen::VectorXd& values);

}  // namespace crdet
