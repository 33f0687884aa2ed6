#pragma once

#include "basis.hpp"

namespace crdet {

// Conformal state e^w theta for pluriharmonic w given by real coefficients
// over the basis elements (index 0 = constants coordinate, the scaling mode).
// Grid caches are built once and shared by the functionals.
struct ContactState {
  ContextPtr ctx;
  Eigen::VectorXd u;  // real coefficients, size ctx->dim()

  Eigen::VectorXd w, Dw, Tw, gsq, expw, exp2w;  // node caches
  Eigen::VectorXcd Zw;

  ContactState(ContextPtr context, Eigen::VectorXd coeffs);

  double constants_coordinate() const { return u[0]; }

  // ln of the volume average of e^{2w}
  double log_mean_exp2w() const;

  // shift the constants coordinate so the volume average of e^{2w} is 1
  void normalize_volume();

  double sup_norm_w() const { return w.cwiseAbs().maxCoeff(); }
};

// random pluriharmonic state with sup norm scaled to `sup`
Eigen::VectorXd random_pluri_coeffs(const SphereContext& ctx, Rng& rng, double sup);

}  // namespace crdet
