#pragma once

#include <vector>

#include "polyfn.hpp"

namespace crdet {

// Product rule on Hopf coordinates: Gauss-Legendre in eta over [0, pi/2] with
// the area factor 2 cos(eta) sin(eta), uniform (trapezoid on the circle) grids
// in xi1, xi2 over [0, 2pi). Total mass is Vol = 4 pi^2.
class GridQuadrature {
 public:
  GridQuadrature(int n_eta, int n_xi);

  int n_eta() const { return n_eta_; }
  int n_xi() const { return n_xi_; }
  std::size_t size() const { return w_.size(); }

  const std::vector<double>& weights() const { return w_; }
  double eta(std::size_t i) const { return eta_[i]; }
  double xi1(std::size_t i) const { return xi1_[i]; }
  double xi2(std::size_t i) const { return xi2_[i]; }

  // largest monomial degree integrated to 1e-12 against the moment rule
  // (phase exactness caps it at n_xi - 1)
  int exactness_degree() const { return exactness_degree_; }

  double integrate(std::span<const double> values) const;
  complex integrate(std::span<const complex> values) const;

  std::vector<complex> eval(const PolyFn& f) const;
  // requires consistent conjugate-symmetric coefficients; enforces that the
  // pointwise imaginary residue stays below 1e-13 of scale
  std::vector<double> eval_real(const PolyFn& f) const;

 private:
  int n_eta_, n_xi_;
  std::vector<double> eta_, xi1_, xi2_, w_;
  int exactness_degree_ = 0;

  void scan_exactness();
};

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace crdet
