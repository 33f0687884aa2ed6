#include "basis.hpp"

namespace crdet {

PluriBasis PluriBasis::build(int N) {
  if (N < 1) throw Error("pluri_basis: N must be >= 1");
  PluriBasis out;
  out.N_ = N;

  PolyFn one(1.0);
  out.entries_.push_back({one, 0, EntryType::Constant, kVol});
  out.real_elems_.push_back(one);
  out.real_degree_.push_back(0);
  out.real_norm2_.push_back(kVol);

  std::vector<BasisEntry> antis;
  for (int j = 1; j <= N; ++j) {
    for (int a = j; a >= 0; --a) {
      const int b = j - a;
      PolyFn phi = PolyFn::holo(a, b);
      const double n2 = mono_integrate({std::uint16_t(a), std::uint16_t(b),
                                        std::uint16_t(a), std::uint16_t(b)});
      out.entries_.push_back({phi, j, EntryType::Holomorphic, n2});
      antis.push_back({phi.conjugated(), j, EntryType::Antiholomorphic, n2});

      out.real_elems_.push_back(phi + phi.conjugated());
      out.real_degree_.push_back(j);
      out.real_norm2_.push_back(2.0 * n2);
      out.real_elems_.push_back(complex(0.0, 1.0) * (phi - phi.conjugated()));
      out.real_degree_.push_back(j);
      out.real_norm2_.push_back(2.0 * n2);
    }
    // conjugate block follows the holomorphic block of the same degree
    for (auto& e : antis) out.entries_.push_back(std::move(e));
    antis.clear();
  }
  return out;
}

SphereContext::SphereContext(int N, int n_eta, int n_xi)
    : basis(PluriBasis::build(N)), grid(n_eta, n_xi) {
  const int dim = basis.real_dim();
  const std::size_t n = grid.size();
  E.resize(dim, n);
  Z.resize(dim, n);
  D.resize(dim, n);
  Tg.resize(dim, n);
  lam_b.resize(dim);
  lam_pane.resize(dim);
  norm2.resize(dim);

  for (int k = 0; k < dim; ++k) {
    const PolyFn& e = basis.real_element(k);
    const int j = basis.real_degree(k);
    lam_b[k] = double(j);
    lam_pane[k] = double(j) * (j + 1.0);
    norm2[k] = basis.real_norm2(k);

    std::vector<double> ev = grid.eval_real(e);
    std::vector<complex> zv = grid.eval(apply_field(e, Field::Z1));
    std::vector<double> dv = grid.eval_real(sublaplacian(e));
    std::vector<double> tv = grid.eval_real(apply_field(e, Field::T));
    for (std::size_t i = 0; i < n; ++i) {
      E(k, i) = ev[i];
      Z(k, i) = zv[i];
      D(k, i) = dv[i];
      Tg(k, i) = tv[i];
    }
  }

  Eigen::VectorXd wg = Eigen::Map<const Eigen::VectorXd>(grid.weights().data(), n);
  G_Q = E * wg.asDiagonal() * E.transpose();
  G_Q = 0.5 * (G_Q + G_Q.transpose()).eval();
  G_Q_llt.compute(G_Q);
  if (G_Q_llt.info() != Eigen::Success) {
    throw Error("SphereContext: base Gram not positive definite (grid too coarse)");
  }
}

double SphereContext::quad_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                double kappa) const {
  double s = 0.0;
  for (int k = 0; k < dim(); ++k) s += kappa * lam_pane[k] * norm2[k] * u[k] * v[k];
  return s;
}

ContextPtr make_context(int N, int n_eta, int n_xi) {
  return std::make_shared<const SphereContext>(N, n_eta, n_xi);
}

}  // namespace crdet
