#pragma once

#include <Eigen/Dense>
#include <string>

#include "spectral_zeta.hpp"

namespace crdet {

// Spectral data for a non-sphere model, supplied as JSON:
//   { "dim": n, "weights": [...], "R": [...],
//     "T": [[...]], "Delta_b": [[...]], "A": [[...]],
//     "Qprime_total": q, "Qprime": [...]? }
// Functions live as node-value vectors against the weighted inner product;
// T, Delta_b, A act on them. Validated for symmetry/positivity on load.
struct SyntheticModel {
  int dim = 0;
  Eigen::VectorXd weights;
  Eigen::VectorXd R;
  Eigen::MatrixXd T;
  Eigen::MatrixXd Delta;
  Eigen::MatrixXd A;
  double Qprime_total = 0.0;
  Eigen::VectorXd Qprime;  // nodewise; defaults to Qprime_total / V

  double V = 0.0;  // total weight

  static SyntheticModel load(const std::string& path);
  static SyntheticModel parse(const std::string& text, const std::string& origin = "<memory>");

  void validate(const std::string& origin) const;

  double a() const { return Qprime_total / (16.0 * kPiSq); }

  SpectralSequence spectrum() const;
  double lambda_best() const;

  // carre du champ from the calibration identity:
  // |grad u|^2 = u Delta u - Delta(u^2)/2
  Eigen::VectorXd grad_sq(const Eigen::VectorXd& u) const;

  double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

  double functional_II(const Eigen::VectorXd& u) const;
  double functional_III(const Eigen::VectorXd& u) const;
  double functional_IV(const Eigen::VectorXd& u) const;
  double functional_F(const Eigen::VectorXd& u, double c2, double c3) const;
  Eigen::VectorXd grad_F(const Eigen::VectorXd& u, double c2, double c3) const;
};

}  // namespace crdet
