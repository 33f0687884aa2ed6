#include "extremal.hpp"

#include <algorithm>

namespace crdet {

double best_constant_lambda(const Eigen::MatrixXd& K_T, const Eigen::MatrixXd& K_D) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esd(K_D);
  const double tol = 1e-12 * std::max(1.0, esd.eigenvalues().maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < esd.eigenvalues().size(); ++i) {
    if (esd.eigenvalues()[i] > tol) keep.push_back(i);
  }
  if (keep.empty()) throw Error("best_constant_lambda: Delta_b block is singular");
  Eigen::MatrixXd V(K_D.rows(), int(keep.size()));
  Eigen::VectorXd sinv(int(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    V.col(int(c)) = esd.eigenvectors().col(keep[c]);
    sinv[int(c)] = 1.0 / std::sqrt(esd.eigenvalues()[keep[c]]);
  }
  Eigen::MatrixXd W = V * sinv.asDiagonal();
  Eigen::MatrixXd Q = W.transpose() * K_T * W;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esq(0.5 * (Q + Q.transpose()));
  return std::sqrt(std::max(0.0, esq.eigenvalues().maxCoeff()));
}

double best_constant_lambda(const SphereContext& ctx) {
  const int dim = ctx.dim();
  const std::size_t n = ctx.nodes();
  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(ctx.grid.weights().data(), n);
  // exclude the constants row/column
  Eigen::MatrixXd Tb = ctx.Tg.bottomRows(dim - 1);
  Eigen::MatrixXd Db = ctx.D.bottomRows(dim - 1);
  Eigen::MatrixXd K_T = Tb * wg.asDiagonal() * Tb.transpose();
  Eigen::MatrixXd K_D = Db * wg.asDiagonal() * Db.transpose();
  return best_constant_lambda(0.5 * (K_T + K_T.transpose()), 0.5 * (K_D + K_D.transpose()));
}

FeasibilityReport condition_feasible(double c2, double c3, double a, double mu, double lambda) {
  if (!(c2 > 0.0)) throw Error("condition_feasible: requires c2 > 0");
  if (c3 < 0.0) throw Error("condition_feasible: requires c3 >= 0");
  if (!(mu > 0.0) || !(lambda > 0.0)) throw Error("condition_feasible: mu, lambda must be positive");
  FeasibilityReport r;
  r.c2 = c2;
  r.c3 = c3;
  r.a = a;
  r.lambda = lambda;
  r.mu = mu;
  const double root = std::sqrt(25.0 * c2 * c2 + c2 * (1.0 - a) / (3.0 * kPiSq));
  r.bound = mu * (root - 5.0 * c2);
  r.feasible = c3 < r.bound;
  r.window_bound = 1.5 / lambda * (root - 5.0 * c2);

  // alpha window: alpha_lo from 1/alpha < c2/(2c2 + (2/3) lambda c3),
  // alpha_hi from the Delta^2 coefficient; nonempty iff all three conditions
  // admit a common alpha
  r.alpha_lo = (2.0 * c2 + (2.0 / 3.0) * lambda * c3) / c2;
  const double num = 2.0 * c2 - 2.0 * lambda * c3 - 4.0 * kC1 * (1.0 - a);
  r.alpha_hi = num / (c2 + lambda * c3 / 3.0);
  r.alpha_window_nonempty = num > 0.0 && r.alpha_lo < r.alpha_hi;
  return r;
}

CoercivityAudit coercivity_audit(const ContactState& state, double alpha, double c2, double c3,
                                 std::optional<double> C4, double C5) {
  if (!(alpha > 0.0)) throw Error("coercivity_audit: alpha must be positive");
  const SphereContext& ctx = *state.ctx;
  if (std::abs(state.u[0]) > 1e-12) throw Error("coercivity_audit: w must be mean-zero");

  const std::size_t n = ctx.nodes();
  const auto& wg = ctx.grid.weights();
  std::vector<double> t1(n), t2(n), t3(n);
  for (std::size_t i = 0; i < n; ++i) {
    t1[i] = wg[i] * state.Dw[i] * state.Dw[i];
    t2[i] = wg[i] * state.gsq[i] * state.gsq[i];
    t3[i] = wg[i] * state.gsq[i];
  }
  CoercivityAudit out;
  out.alpha = alpha;
  out.dw2 = pairwise_sum(t1);
  out.grad4 = pairwise_sum(t2);
  out.grad2 = pairwise_sum(t3);
  out.C4 = C4.value_or(kWebsterR * c2);
  out.C5 = C5;

  const double a = kTotalQprime / (16.0 * kPiSq);
  const double lambda = 1.0;  // sphere value, exact for every truncation
  FunctionalReport rep = functional_F(state, c2, c3);
  out.lhs = rep.F;
  out.rhs = (4.0 * kC1 * (1.0 - a) + c2 * (alpha - 2.0) + c3 * (2.0 + alpha / 3.0) * lambda) *
                out.dw2 +
            (c2 * (1.0 / alpha - 0.5) + c3 * lambda / (3.0 * alpha)) * out.grad4 +
            out.C4 * out.grad2 + out.C5;
  out.slack = out.rhs - out.lhs;
  return out;
}

double young_inequality_slack(const ContactState& state, double alpha) {
  const SphereContext& ctx = *state.ctx;
  const std::size_t n = ctx.nodes();
  const auto& wg = ctx.grid.weights();
  std::vector<double> lhs(n), d2(n), g4(n);
  for (std::size_t i = 0; i < n; ++i) {
    lhs[i] = wg[i] * 2.0 * state.Dw[i] * state.gsq[i];
    d2[i] = wg[i] * state.Dw[i] * state.Dw[i];
    g4[i] = wg[i] * state.gsq[i] * state.gsq[i];
  }
  return alpha * pairwise_sum(d2) + pairwise_sum(g4) / alpha - pairwise_sum(lhs);
}

AscentTrace ascend(const AscentProblem& prob, Eigen::VectorXd u, const AscentOptions& opt) {
  AscentTrace trace;
  if (prob.gauge) prob.gauge(u);

  std::vector<int> free;
  for (int k = 0; k < prob.dim; ++k) {
    if (std::find(prob.frozen.begin(), prob.frozen.end(), k) == prob.frozen.end()) {
      free.push_back(k);
    }
  }
  auto masked = [&](Eigen::VectorXd g) {
    for (int k : prob.frozen) g[k] = 0.0;
    return g;
  };

  double F = prob.value(u);
  for (int it = 0; it <= opt.max_iter; ++it) {
    Eigen::VectorXd g = masked(prob.gradient(u));
    const double gn = g.norm();
    trace.iterates.push_back({u, F, gn});
    trace.iterations = it;
    if (gn <= opt.grad_tol) {
      trace.converged = true;
      trace.stop_reason = "gradient below tolerance";
      return trace;
    }
    if (it == opt.max_iter) break;

    // curvature-scaled direction: invert |H| on the free block so the
    // quartically flat modes get Newton-sized steps
    Eigen::VectorXd d = g;
    if (prob.hessian) {
      Eigen::MatrixXd H = prob.hessian(u);
      const int m = int(free.size());
      Eigen::MatrixXd Hf(m, m);
      Eigen::VectorXd gf(m);
      for (int a = 0; a < m; ++a) {
        gf[a] = g[free[a]];
        for (int b = 0; b < m; ++b) Hf(a, b) = H(free[a], free[b]);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hf);
      const double floor = std::max(1e-9 * es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
      Eigen::VectorXd proj = es.eigenvectors().transpose() * gf;
      for (int a = 0; a < m; ++a) proj[a] /= std::max(std::abs(es.eigenvalues()[a]), floor);
      Eigen::VectorXd df = es.eigenvectors() * proj;
      d.setZero();
      for (int a = 0; a < m; ++a) d[free[a]] = df[a];
    }
    const double slope = g.dot(d);

    const double noise = opt.noise_floor * (1.0 + std::abs(F));
    double s = opt.initial_step;
    bool accepted = false;
    for (int bt = 0; bt < opt.max_backtracks; ++bt) {
      Eigen::VectorXd un = u + s * d;
      if (prob.gauge) prob.gauge(un);
      const double Fn = prob.value(un);
      const double predicted = opt.armijo_slope * s * slope;
      if (predicted > noise) {
        if (Fn >= F + predicted) {
          u = un;
          F = Fn;
          accepted = true;
          break;
        }
      } else {
        // objective differences are below evaluation noise; descend on the
        // gradient norm instead, which stays resolvable much longer
        if (Fn >= F - noise && masked(prob.gradient(un)).norm() <= gn * (1.0 - 1e-6)) {
          u = un;
          F = Fn;
          accepted = true;
          break;
        }
      }
      s *= opt.backtrack;
    }
    if (!accepted) {
      trace.stop_reason = "line search stalled at objective noise";
      return trace;
    }
  }
  trace.stop_reason = "iteration cap reached";
  return trace;
}

AscentTrace maximize_F(const ContactState& init, double c2, double c3,
                       const AscentOptions& opt) {
  if (!(c2 > 0.0) || c3 < 0.0) throw Error("maximize_F: requires c2 > 0 and c3 >= 0");
  ContextPtr ctx = init.ctx;
  AscentProblem prob;
  prob.dim = ctx->dim();
  prob.frozen = {0};
  prob.value = [ctx, c2, c3](const Eigen::VectorXd& u) {
    return functional_F(ContactState(ctx, u), c2, c3).F;
  };
  prob.gradient = [ctx, c2, c3](const Eigen::VectorXd& u) {
    return grad_F(ContactState(ctx, u), c2, c3);
  };
  prob.hessian = [ctx, c2, c3](const Eigen::VectorXd& u) {
    return hess_F(ContactState(ctx, u), c2, c3);
  };
  prob.gauge = [ctx](Eigen::VectorXd& u) {
    ContactState s(ctx, u);
    const double shift = -0.5 * s.log_mean_exp2w();
    u[0] += shift;
  };
  return ascend(prob, init.u, opt);
}

double el_residual(const ContactState& state, double c2, double c3) {
  Eigen::VectorXd g = grad_F(state, c2, c3);
  g[0] = 0.0;
  return g.norm();
}

VariationDefects trace_variation_checks(const ContactState& state, double t, double step) {
  if (!(t > 0.0)) throw Error("trace_variation_checks: t must be positive");
  const SphereContext& ctx = *state.ctx;
  const int dim = ctx.dim();
  const std::size_t n = ctx.nodes();
  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(ctx.grid.weights().data(), n);

  auto tau_of = [&](double r) {
    Eigen::VectorXd wr(n);
    for (std::size_t i = 0; i < n; ++i) wr[i] = wg[i] * std::exp(2.0 * r * state.w[i]);
    Eigen::MatrixXd B = ctx.E * wr.asDiagonal();
    Eigen::MatrixXd G = B * ctx.E.transpose();
    G = 0.5 * (G + G.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success) throw IllConditionedGram("trace_variation_checks: Gram");
    return std::pair<Eigen::MatrixXd, Eigen::MatrixXd>(llt.solve(B), G);
  };

  auto [C0, G0] = tau_of(0.0);
  auto [Cp, Gp] = tau_of(step);
  auto [Cm, Gm] = tau_of(-step);

  // tau M_w and tau M_w tau as maps from node values to coefficients
  Eigen::MatrixXd CMw = C0 * state.w.asDiagonal();
  Eigen::MatrixXd CMwTau = (CMw * ctx.E.transpose()) * C0;

  VariationDefects out;
  {
    Eigen::MatrixXd diff = (Cp - Cm) / (2.0 * step);
    Eigen::MatrixXd closed = 2.0 * (CMw - CMwTau);
    out.dtau = (diff - closed).norm();
  }

  // A_r = G_r^{-1} G_Q diag(lambda); lambda = j(j+1), unit normalization
  Eigen::MatrixXd K = ctx.G_Q * ctx.lam_pane.asDiagonal();
  {
    Eigen::MatrixXd Ap = Eigen::LLT<Eigen::MatrixXd>(Gp).solve(K);
    Eigen::MatrixXd Am = Eigen::LLT<Eigen::MatrixXd>(Gm).solve(K);
    Eigen::MatrixXd diff = (Ap - Am) / (2.0 * step);
    Eigen::MatrixXd closed = -2.0 * (CMw * ctx.E.transpose()) * ctx.lam_pane.asDiagonal();
    out.dA = (diff - closed).norm();
  }

  // heat trace over the truncated span via the symmetric pencil
  Eigen::MatrixXd Ksym = 0.5 * (K + K.transpose());
  auto heat_trace = [&](const Eigen::MatrixXd& G) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ksym, G, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int k = 0; k < dim; ++k) s += std::exp(-t * ges.eigenvalues()[k]);
    return s;
  };
  {
    const double diff = (heat_trace(Gp) - heat_trace(Gm)) / (2.0 * step);
    Eigen::MatrixXd TMwA = (CMw * ctx.E.transpose()) * ctx.lam_pane.asDiagonal();
    double closed = 0.0;
    for (int k = 0; k < dim; ++k) closed += TMwA(k, k) * std::exp(-t * ctx.lam_pane[k]);
    closed *= 2.0 * t;
    out.dtrace = std::abs(diff - closed);
  }
  return out;
}

}  // namespace crdet
