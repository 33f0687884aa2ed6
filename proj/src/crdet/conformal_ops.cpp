#include "conformal_ops.hpp"

namespace crdet {

OperatorMatrix matrix_A(const SphereContext& ctx, double kappa) {
  if (!(kappa > 0)) throw Error("matrix_A: kappa must be positive");
  OperatorMatrix out;
  out.kappa = kappa;
  out.inner_product = ProjWeight::Base;
  out.mat = (kappa * ctx.lam_pane).asDiagonal();
  out.eigenvalues = kappa * ctx.lam_pane;
  std::sort(out.eigenvalues.data(), out.eigenvalues.data() + out.eigenvalues.size());
  return out;
}

OperatorMatrix matrix_A_conformal(const ContactState& state, double kappa) {
  const SphereContext& ctx = *state.ctx;
  Eigen::MatrixXd G = gram_matrix(ctx, ProjWeight::Conformal, &state);
  const double cond = gram_condition(G);
  if (!(cond < 1e12)) {
    throw IllConditionedGram("matrix_A_conformal: weighted Gram condition exceeds 1e12");
  }
  // exact quadratic form of A: diagonal since the elements are eigenfunctions
  Eigen::VectorXd form = kappa * ctx.lam_pane.cwiseProduct(ctx.norm2);
  Eigen::MatrixXd Abar = form.asDiagonal();

  OperatorMatrix out;
  out.kappa = kappa;
  out.inner_product = ProjWeight::Conformal;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  out.mat = llt.solve(Abar);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Abar, G, Eigen::EigenvaluesOnly);
  out.eigenvalues = ges.eigenvalues();
  return out;
}

Eigen::VectorXd transformed_R(const ContactState& state) {
  const std::size_t n = state.ctx->nodes();
  Eigen::VectorXd out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (kWebsterR - state.gsq[i] - 2.0 * state.Dw[i]) / state.expw[i];
  }
  return out;
}

Eigen::VectorXd transformed_sublap(const ContactState& state, const Eigen::VectorXd& f_values) {
  Eigen::VectorXd cf = project_pluri_base(*state.ctx, f_values);
  return tilde_sublap_coeffs(state, cf);
}

Eigen::VectorXd tilde_sublap_coeffs(const ContactState& state, const Eigen::VectorXd& v_coeffs) {
  const SphereContext& ctx = *state.ctx;
  Eigen::VectorXd Dv = ctx.D.transpose() * v_coeffs;
  Eigen::VectorXcd Zv = ctx.Z.transpose() * v_coeffs.cast<complex>();
  const std::size_t n = ctx.nodes();
  Eigen::VectorXd out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dot = 2.0 * std::real(Zv[i] * std::conj(state.Zw[i]));
    out[i] = (Dv[i] + dot) / state.expw[i];
  }
  return out;
}

double projected_Qprime_pairing(const ContactState& state, const Eigen::VectorXd& v_coeffs,
                                double kappa) {
  const SphereContext& ctx = *state.ctx;
  if (v_coeffs.size() != ctx.dim()) throw Error("projected_Qprime_pairing: size mismatch");
  return ctx.quad_form(v_coeffs, state.u, kappa) + kQprime * ctx.mean_integral(v_coeffs);
}

}  // namespace crdet
