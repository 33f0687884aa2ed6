#include "contact_state.hpp"

namespace crdet {

ContactState::ContactState(ContextPtr context, Eigen::VectorXd coeffs)
    : ctx(std::move(context)), u(std::move(coeffs)) {
  if (u.size() != ctx->dim()) throw Error("ContactState: coefficient size mismatch");
  // the functionals integrate products of degree up to 4N ((Delta w + gsq/2)^2
  // and gsq^2); a grid that cannot do that exactly would fail silently
  const int need = std::min(4 * ctx->basis.truncation_degree(), 48);
  if (ctx->grid.exactness_degree() < need) {
    throw Error("ContactState: grid exactness " +
                std::to_string(ctx->grid.exactness_degree()) + " below the degree " +
                std::to_string(need) + " the functionals require");
  }
  const std::size_t n = ctx->nodes();
  w = ctx->E.transpose() * u;
  Dw = ctx->D.transpose() * u;
  Tw = ctx->Tg.transpose() * u;
  Zw = ctx->Z.transpose() * u.cast<complex>();
  gsq.resize(n);
  expw.resize(n);
  exp2w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gsq[i] = 2.0 * std::norm(Zw[i]);
    expw[i] = std::exp(w[i]);
    exp2w[i] = expw[i] * expw[i];
  }
}

double ContactState::log_mean_exp2w() const {
  std::vector<double> t(ctx->nodes());
  const auto& wg = ctx->grid.weights();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = wg[i] * exp2w[i];
  return std::log(pairwise_sum(t) / kVol);
}

void ContactState::normalize_volume() {
  const double shift = -0.5 * log_mean_exp2w();
  u[0] += shift;
  for (std::size_t i = 0; i < ctx->nodes(); ++i) {
    w[i] += shift;
    expw[i] = std::exp(w[i]);
    exp2w[i] = expw[i] * expw[i];
  }
}

Eigen::VectorXd random_pluri_coeffs(const SphereContext& ctx, Rng& rng, double sup) {
  Eigen::VectorXd u(ctx.dim());
  u[0] = 0.0;
  for (int k = 1; k < ctx.dim(); ++k) {
    // damp higher degrees so samples are not dominated by the top modes
    u[k] = rng.uniform(-1.0, 1.0) / (1.0 + ctx.lam_b[k]);
  }
  Eigen::VectorXd wvals = ctx.E.transpose() * u;
  const double m = wvals.cwiseAbs().maxCoeff();
  if (m > 0) u *= sup / m;
  return u;
}

}  // namespace crdet
