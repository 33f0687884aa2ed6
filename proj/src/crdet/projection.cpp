#include "projection.hpp"

namespace crdet {

Eigen::MatrixXd gram_matrix(const SphereContext& ctx, ProjWeight weight,
                            const ContactState* state) {
  const std::size_t n = ctx.nodes();
  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(ctx.grid.weights().data(), n);
  if (weight == ProjWeight::Conformal) {
    if (!state) throw Error("gram_matrix: conformal weight requires a state");
    wg = wg.cwiseProduct(state->exp2w);
  }
  Eigen::MatrixXd G = ctx.E * wg.asDiagonal() * ctx.E.transpose();
  return 0.5 * (G + G.transpose());
}

double gram_condition(const Eigen::MatrixXd& G) {
  if (!G.allFinite()) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

namespace {

Eigen::VectorXd solve_projection(const SphereContext& ctx, const Eigen::MatrixXd& G,
                                 const Eigen::VectorXd& weighted_rhs) {
  const double cond = gram_condition(G);
  if (!(cond < 1e12)) {
    throw IllConditionedGram("project_pluri: weighted Gram condition exceeds 1e12");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) {
    throw IllConditionedGram("project_pluri: weighted Gram not positive definite");
  }
  return llt.solve(weighted_rhs);
  (void)ctx;
}

}  // namespace

Eigen::VectorXd project_pluri(const Eigen::VectorXd& values, const ContactState& state,
                              ProjWeight weight) {
  const SphereContext& ctx = *state.ctx;
  const std::size_t n = ctx.nodes();
  if (std::size_t(values.size()) != n) throw Error("project_pluri: value size mismatch");
  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(ctx.grid.weights().data(), n);
  if (weight == ProjWeight::Conformal) wg = wg.cwiseProduct(state.exp2w);
  Eigen::VectorXd rhs = ctx.E * wg.cwiseProduct(values).eval();
  if (weight == ProjWeight::Base) {
    return ctx.G_Q_llt.solve(rhs);
  }
  Eigen::MatrixXd G = ctx.E * wg.asDiagonal() * ctx.E.transpose();
  G = 0.5 * (G + G.transpose()).eval();
  return solve_projection(ctx, G, rhs);
}

Eigen::VectorXd project_pluri_base(const SphereContext& ctx, const Eigen::VectorXd& values) {
  const std::size_t n = ctx.nodes();
  if (std::size_t(values.size()) != n) throw Error("project_pluri_base: value size mismatch");
  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(ctx.grid.weights().data(), n);
  Eigen::VectorXd rhs = ctx.E * wg.cwiseProduct(values).eval();
  return ctx.G_Q_llt.solve(rhs);
}

}  // namespace crdet
