#include "quadrature.hpp"

#include <cmath>

namespace crdet {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

GridQuadrature::GridQuadrature(int n_eta, int n_xi) : n_eta_(n_eta), n_xi_(n_xi) {
  if (n_eta < 4 || n_xi < 4) throw Error("GridQuadrature: sizes must be >= 4");
  std::vector<double> gx, gw;
  gauss_legendre(n_eta, gx, gw);

  const std::size_t n = std::size_t(n_eta) * n_xi * n_xi;
  eta_.reserve(n);
  xi1_.reserve(n);
  xi2_.reserve(n);
  w_.reserve(n);
  const double dxi = 2.0 * kPi / n_xi;
  for (int ie = 0; ie < n_eta; ++ie) {
    const double e = 0.25 * kPi * (gx[ie] + 1.0);
    const double we = 0.25 * kPi * gw[ie] * std::sin(2.0 * e) * dxi * dxi;
    for (int i1 = 0; i1 < n_xi; ++i1) {
      for (int i2 = 0; i2 < n_xi; ++i2) {
        eta_.push_back(e);
        xi1_.push_back(i1 * dxi);
        xi2_.push_back(i2 * dxi);
        w_.push_back(we);
      }
    }
  }
  scan_exactness();
}

double GridQuadrature::integrate(std::span<const double> values) const {
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) t[i] = w_[i] * values[i];
  return pairwise_sum(t);
}

complex GridQuadrature::integrate(std::span<const complex> values) const {
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = w_[i] * values[i].real();
    im[i] = w_[i] * values[i].imag();
  }
  return {pairwise_sum(re), pairwise_sum(im)};
}

std::vector<complex> GridQuadrature::eval(const PolyFn& f) const {
  std::vector<complex> out(size(), complex(0.0));
  for (const auto& [m, c] : f.terms()) {
    const int pc = int(m.a) + int(m.c), ps = int(m.b) + int(m.d);
    const int p1 = m.phase1(), p2 = m.phase2();
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double mag =
          std::pow(std::cos(eta_[i]), pc) * std::pow(std::sin(eta_[i]), ps);
      const double ph = p1 * xi1_[i] + p2 * xi2_[i];
      out[i] += c * (mag * complex(std::cos(ph), std::sin(ph)));
    }
  }
  return out;
}

std::vector<double> GridQuadrature::eval_real(const PolyFn& f) const {
  std::vector<complex> v = eval(f);
  const double scale = std::max(1.0, f.max_abs_coeff());
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i].imag()) > 1e-13 * scale) {
      throw Error("eval_real: imaginary residue above tolerance");
    }
    out[i] = v[i].real();
  }
  return out;
}

void GridQuadrature::scan_exactness() {
  const int cap = std::min(n_xi_ - 1, 48);
  auto passes = [&](const Monomial& m) {
    const double exact = mono_integrate(m);
    std::vector<complex> v = eval(PolyFn::monomial(m));
    const double got = integrate(std::span<const complex>(v)).real();
    // scale by the integral of |monomial| so zero moments are judged fairly
    const Monomial absm{std::uint16_t((m.a + m.c + 1) / 2), std::uint16_t((m.b + m.d + 1) / 2),
                        std::uint16_t((m.a + m.c) / 2), std::uint16_t((m.b + m.d) / 2)};
    const double scale = std::abs(exact) + mono_integrate({absm.a, absm.b, absm.a, absm.b});
    return std::abs(got - exact) <= 1e-12 * std::max(scale, 1e-300);
  };
  int deg = 0;
  for (int D = 1; D <= cap; ++D) {
    bool ok = true;
    if (D % 2 == 0) {
      for (int a = 0; ok && 2 * a <= D; ++a) {
        const int b = D / 2 - a;
        if (b < 0) break;
        ok = passes({std::uint16_t(a), std::uint16_t(b), std::uint16_t(a), std::uint16_t(b)});
      }
    }
    // pure and mixed phases
    ok = ok && passes({std::uint16_t(D), 0, 0, 0});
    ok = ok && passes({std::uint16_t(D / 2), 0, 0, std::uint16_t(D - D / 2)});
    if (!ok) break;
    deg = D;
  }
  exactness_degree_ = deg;
}

}  // namespace crdet
