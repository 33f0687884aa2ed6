#include "functionals.hpp"

namespace crdet {

namespace {

// integral over the base measure of a node vector
double integ(const SphereContext& ctx, const Eigen::VectorXd& v) {
  std::vector<double> t(ctx.nodes());
  const auto& wg = ctx.grid.weights();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = wg[i] * v[i];
  return pairwise_sum(t);
}

Eigen::VectorXd x_field(const ContactState& s) {
  return s.Dw + 0.5 * s.gsq;
}

}  // namespace

double tildeA1(const ContactState& state) {
  const SphereContext& ctx = *state.ctx;
  const double quad = ctx.quad_form(state.u, state.u, kPaneitzKappa);
  const double lin = 2.0 * kQprime * ctx.mean_integral(state.u);
  return quad + lin - (1.0 / kC1) * state.log_mean_exp2w();
}

double tildeA2(const ContactState& state) {
  const SphereContext& ctx = *state.ctx;
  Eigen::VectorXd X = x_field(state);
  Eigen::VectorXd integrand =
      kWebsterR * X - X.cwiseProduct(X);
  return 2.0 * integ(ctx, integrand);
}

double tildeA3(const ContactState& state) {
  const SphereContext& ctx = *state.ctx;
  Eigen::VectorXd h = Eigen::VectorXd::Constant(ctx.nodes(), kWebsterR) -
                      state.gsq / 3.0 - state.Dw;
  return 2.0 * integ(ctx, state.Tw.cwiseProduct(h).eval());
}

double functional_II(const ContactState& state) {
  const SphereContext& ctx = *state.ctx;
  const double quad = ctx.quad_form(state.u, state.u, kPaneitzKappa);
  const double lin = 2.0 * kQprime * ctx.mean_integral(state.u);
  return quad + lin - kTotalQprime * state.log_mean_exp2w();
}

double functional_III(const ContactState& state) { return tildeA2(state); }

double functional_IV(const ContactState& state) { return -tildeA3(state); }

FunctionalReport functional_F(const ContactState& state, double c2, double c3,
                              VolumeMode mode) {
  const ContactState* s = &state;
  std::optional<ContactState> normalized;
  if (mode == VolumeMode::Normalized) {
    normalized.emplace(state);
    normalized->normalize_volume();
    s = &*normalized;
  }
  FunctionalReport r;
  r.c2 = c2;
  r.c3 = c3;
  r.a = kTotalQprime / (16.0 * kPiSq);
  r.volume_mode = mode;
  r.A1 = tildeA1(*s);
  r.A2 = tildeA2(*s);
  r.A3 = tildeA3(*s);
  r.II = functional_II(*s);
  r.III = r.A2;
  r.IV = -r.A3;
  r.F = r.c1 * r.II + c2 * r.III + c3 * r.IV;
  return r;
}

double polyakov_log_det_ratio(const ContactState& state, double c2, double c3) {
  return kC1 * tildeA1(state) + c2 * tildeA2(state) - c3 * tildeA3(state);
}

Eigen::VectorXd grad_F(const ContactState& state, double c2, double c3) {
  const SphereContext& ctx = *state.ctx;
  const int dim = ctx.dim();
  const std::size_t n = ctx.nodes();
  const auto& wg = ctx.grid.weights();

  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);

  // II part: 2 A u + 2 Q' mean - total Q' * dlog
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = wg[i] * state.exp2w[i];
  const double mass = pairwise_sum(t);

  Eigen::VectorXd X = x_field(state);
  Eigen::VectorXd y2(n), hA3(n);
  for (std::size_t i = 0; i < n; ++i) {
    y2[i] = kWebsterR - 2.0 * X[i];
    hA3[i] = kWebsterR - state.gsq[i] / 3.0 - state.Dw[i];
  }

  for (int k = 0; k < dim; ++k) {
    // d II
    double dlog_num;
    {
      std::vector<double> tk(n);
      for (std::size_t i = 0; i < n; ++i) tk[i] = wg[i] * state.exp2w[i] * ctx.E(k, i);
      dlog_num = 2.0 * pairwise_sum(tk);
    }
    const double dII = 2.0 * kPaneitzKappa * ctx.lam_pane[k] * ctx.norm2[k] * state.u[k] +
                       (k == 0 ? 2.0 * kQprime * kVol : 0.0) -
                       kTotalQprime * dlog_num / mass;

    // d A2 = 2 int (R - 2X)(D e_k + grad e_k . grad w)
    double dA2;
    {
      std::vector<double> tk(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double gp = 2.0 * std::real(ctx.Z(k, i) * std::conj(state.Zw[i]));
        tk[i] = wg[i] * y2[i] * (ctx.D(k, i) + gp);
      }
      dA2 = 2.0 * pairwise_sum(tk);
    }

    // d A3 = 2 int [ T e_k (R - gsq/3 - Dw) + Tw (-(2/3) grad e_k . grad w - D e_k) ]
    double dA3;
    {
      std::vector<double> tk(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double gp = 2.0 * std::real(ctx.Z(k, i) * std::conj(state.Zw[i]));
        tk[i] = wg[i] * (ctx.Tg(k, i) * hA3[i] +
                         state.Tw[i] * (-(2.0 / 3.0) * gp - ctx.D(k, i)));
      }
      dA3 = 2.0 * pairwise_sum(tk);
    }

    g[k] = kC1 * dII + c2 * dA2 + c3 * (-dA3);
  }
  return g;
}

Eigen::MatrixXd hess_F(const ContactState& state, double c2, double c3) {
  const SphereContext& ctx = *state.ctx;
  const std::size_t n = ctx.nodes();
  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(ctx.grid.weights().data(), n);

  Eigen::VectorXd ee = wg.cwiseProduct(state.exp2w);
  const double mass = ee.sum();
  Eigen::VectorXd m1 = ctx.E * ee;
  Eigen::MatrixXd M2 = ctx.E * ee.asDiagonal() * ctx.E.transpose();
  Eigen::MatrixXd H_II =
      (2.0 * kPaneitzKappa * ctx.lam_pane.cwiseProduct(ctx.norm2)).asDiagonal();
  H_II -= kTotalQprime * (4.0 * M2 / mass - (4.0 / (mass * mass)) * m1 * m1.transpose());

  Eigen::VectorXd X = x_field(state);
  Eigen::VectorXd y = wg.cwiseProduct((kWebsterR - 2.0 * X.array()).matrix());
  Eigen::MatrixXd GP =
      2.0 * (ctx.Z * state.Zw.conjugate().asDiagonal()).real();
  Eigen::MatrixXd dX = ctx.D + GP;
  Eigen::MatrixXd H_A2 =
      4.0 * (ctx.Z * y.asDiagonal() * ctx.Z.adjoint()).real() -
      4.0 * dX * wg.asDiagonal() * dX.transpose();

  Eigen::VectorXd z2 = wg.cwiseProduct(state.Tw);
  Eigen::MatrixXd B = (2.0 / 3.0) * GP + ctx.D;
  Eigen::MatrixXd TB = ctx.Tg * wg.asDiagonal() * B.transpose();
  Eigen::MatrixXd H_A3 = -2.0 * (TB + TB.transpose()) -
                         (4.0 / 3.0) * (ctx.Z * z2.asDiagonal() * ctx.Z.adjoint()).real();

  Eigen::MatrixXd H = kC1 * H_II + c2 * H_A2 + c3 * (-H_A3);
  return 0.5 * (H + H.transpose());
}

Eigen::VectorXd hess_diag_F(const ContactState& state, double c2, double c3) {
  return hess_F(state, c2, c3).diagonal();
}

double cocycle_defect(const ContextPtr& ctx, const Eigen::VectorXd& w1,
                      const Eigen::VectorXd& w2, CocyclePart part) {
  ContactState s1(ctx, w1);
  ContactState s12(ctx, w1 + w2);
  ContactState s2(ctx, w2);
  const SphereContext& c = *ctx;
  const auto& wg = c.grid.weights();
  const std::size_t n = c.nodes();

  if (part == CocyclePart::A1) {
    const double whole = tildeA1(s12);
    const double first = tildeA1(s1);
    // tilde-frame evaluation of A1 at w2:
    //   <w2, A w2> is measure-independent for the conformal family,
    //   the Q' pairing uses the projected transformation law,
    //   the volume average is taken in e^{2 w1} nu.
    const double quad = c.quad_form(w2, w2, kPaneitzKappa);
    const double lin = 2.0 * projected_Qprime_pairing(s1, w2, kPaneitzKappa);
    std::vector<double> num(n), den(n);
    for (std::size_t i = 0; i < n; ++i) {
      den[i] = wg[i] * s1.exp2w[i];
      num[i] = den[i] * s2.exp2w[i];
    }
    const double log_avg = std::log(pairwise_sum(num) / pairwise_sum(den));
    const double second = quad + lin - (1.0 / kC1) * log_avg;
    return std::abs(whole - first - second);
  }

  // A2 in the w1 frame: R~ from the law, X~ = e^{-w1}(Dw2 + grad w2 . grad w1
  // + gsq(w2)/2), measure e^{2 w1} nu, gradients contracted in the w1 frame.
  const double whole = tildeA2(s12);
  const double first = tildeA2(s1);
  Eigen::VectorXd Rt = transformed_R(s1);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cross = 2.0 * std::real(s2.Zw[i] * std::conj(s1.Zw[i]));
    const double Xt = (s2.Dw[i] + cross + 0.5 * s2.gsq[i]) / s1.expw[i];
    t[i] = wg[i] * s1.exp2w[i] * (Rt[i] * Xt - Xt * Xt);
  }
  const double second = 2.0 * pairwise_sum(t);
  return std::abs(whole - first - second);
}

}  // namespace crdet
