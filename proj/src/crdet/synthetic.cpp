#include "synthetic.hpp"

#include <fstream>
#include <json.hpp>

#include "extremal.hpp"

namespace crdet {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Eigen::VectorXd to_vector(const json& j, int n, const std::string& key,
                          const std::string& origin) {
  if (!j.is_array() || int(j.size()) != n) {
    throw ModelFormatError(origin + ": field '" + key + "' must be an array of length " +
                           std::to_string(n));
  }
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number()) {
      throw ModelFormatError(origin + ": field '" + key + "' has a non-numeric entry at index " +
                             std::to_string(i));
    }
    v[i] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd to_matrix(const json& j, int n, const std::string& key,
                          const std::string& origin) {
  if (!j.is_array() || int(j.size()) != n) {
    throw ModelFormatError(origin + ": field '" + key + "' must be a " + std::to_string(n) + "x" +
                           std::to_string(n) + " matrix");
  }
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    Eigen::VectorXd row = to_vector(j[r], n, key + "[" + std::to_string(r) + "]", origin);
    m.row(r) = row;
  }
  return m;
}

}  // namespace

SyntheticModel SyntheticModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError(path + ": cannot open model file");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text, path);
}

SyntheticModel SyntheticModel::parse(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(origin + ":" + std::to_string(line_of_offset(text, e.byte)) +
                           ": JSON parse error: " + e.what());
  }
  for (const char* key : {"dim", "weights", "R", "T", "Delta_b", "A", "Qprime_total"}) {
    if (!j.contains(key)) {
      throw ModelFormatError(origin + ": missing required field '" + std::string(key) + "'");
    }
  }
  SyntheticModel m;
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 2) {
    throw ModelFormatError(origin + ": 'dim' must be an integer >= 2");
  }
  m.dim = j["dim"].get<int>();
  m.weights = to_vector(j["weights"], m.dim, "weights", origin);
  m.R = to_vector(j["R"], m.dim, "R", origin);
  m.T = to_matrix(j["T"], m.dim, "T", origin);
  m.Delta = to_matrix(j["Delta_b"], m.dim, "Delta_b", origin);
  m.A = to_matrix(j["A"], m.dim, "A", origin);
  if (!j["Qprime_total"].is_number()) {
    throw ModelFormatError(origin + ": 'Qprime_total' must be a number");
  }
  m.Qprime_total = j["Qprime_total"].get<double>();
  m.V = m.weights.sum();
  if (j.contains("Qprime")) {
    m.Qprime = to_vector(j["Qprime"], m.dim, "Qprime", origin);
  } else {
    m.Qprime = Eigen::VectorXd::Constant(m.dim, m.Qprime_total / m.V);
  }
  m.validate(origin);
  return m;
}

void SyntheticModel::validate(const std::string& origin) const {
  for (int i = 0; i < dim; ++i) {
    if (!(weights[i] > 0.0)) {
      throw ModelFormatError(origin + ": weights[" + std::to_string(i) + "] must be positive");
    }
  }
  auto check_sym_psd = [&](const Eigen::MatrixXd& M, const char* name) {
    Eigen::MatrixXd WM = weights.asDiagonal() * M;
    const double scale = std::max(1.0, WM.norm());
    if ((WM - WM.transpose()).norm() > 1e-8 * scale) {
      throw ModelFormatError(origin + ": '" + std::string(name) +
                             "' is not symmetric for the weighted inner product");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (WM + WM.transpose()),
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * scale) {
      throw ModelFormatError(origin + ": '" + std::string(name) + "' is not positive semidefinite");
    }
  };
  check_sym_psd(A, "A");
  check_sym_psd(Delta, "Delta_b");
}

SpectralSequence SyntheticModel::spectrum() const {
  Eigen::MatrixXd WA = weights.asDiagonal() * A;
  WA = 0.5 * (WA + WA.transpose()).eval();
  Eigen::MatrixXd W = weights.asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(WA, W, Eigen::EigenvaluesOnly);
  SpectralSequence seq;
  const double top = std::max(1.0, ges.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < dim; ++i) {
    const double ev = ges.eigenvalues()[i];
    if (ev <= 1e-10 * top) {
      ++seq.kernel_dim;
    } else if (!seq.levels.empty() && std::abs(ev - seq.levels.back().lambda) <= 1e-9 * top) {
      seq.levels.back().mult += 1.0;
    } else {
      seq.levels.push_back({ev, 1.0});
    }
  }
  return seq;
}

double SyntheticModel::lambda_best() const {
  Eigen::MatrixXd W = weights.asDiagonal();
  Eigen::MatrixXd K_T = T.transpose() * W * T;
  Eigen::MatrixXd K_D = Delta.transpose() * W * Delta;
  return best_constant_lambda(0.5 * (K_T + K_T.transpose()), 0.5 * (K_D + K_D.transpose()));
}

Eigen::VectorXd SyntheticModel::grad_sq(const Eigen::VectorXd& u) const {
  Eigen::VectorXd du = Delta * u;
  Eigen::VectorXd u2 = u.cwiseProduct(u);
  return u.cwiseProduct(du) - 0.5 * (Delta * u2);
}

double SyntheticModel::inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  return f.cwiseProduct(weights).dot(g);
}

double SyntheticModel::functional_II(const Eigen::VectorXd& u) const {
  const double quad = inner(u, A * u);
  const double lin = 2.0 * inner(Qprime, u);
  Eigen::VectorXd e2u = (2.0 * u).array().exp();
  const double logavg = std::log(inner(e2u, Eigen::VectorXd::Ones(dim)) / V);
  return quad + lin - Qprime_total * logavg;
}

double SyntheticModel::functional_III(const Eigen::VectorXd& u) const {
  Eigen::VectorXd X = Delta * u + 0.5 * grad_sq(u);
  Eigen::VectorXd integrand = R.cwiseProduct(X) - X.cwiseProduct(X);
  return 2.0 * inner(integrand, Eigen::VectorXd::Ones(dim));
}

double SyntheticModel::functional_IV(const Eigen::VectorXd& u) const {
  Eigen::VectorXd tu = T * u;
  Eigen::VectorXd h = R - grad_sq(u) / 3.0 - Delta * u;
  return -2.0 * inner(tu.cwiseProduct(h).eval(), Eigen::VectorXd::Ones(dim));
}

double SyntheticModel::functional_F(const Eigen::VectorXd& u, double c2, double c3) const {
  return kC1 * functional_II(u) + c2 * functional_III(u) + c3 * functional_IV(u);
}

Eigen::VectorXd SyntheticModel::grad_F(const Eigen::VectorXd& u, double c2, double c3) const {
  const Eigen::VectorXd& w = weights;
  Eigen::VectorXd du = Delta * u;
  Eigen::VectorXd gsq = grad_sq(u);
  Eigen::VectorXd X = du + 0.5 * gsq;
  Eigen::VectorXd e2u = (2.0 * u).array().exp();
  const double mass = inner(e2u, Eigen::VectorXd::Ones(dim));

  Eigen::MatrixXd WA = w.asDiagonal() * A;
  Eigen::VectorXd gII = (WA + WA.transpose()) * u + 2.0 * w.cwiseProduct(Qprime) -
                        Qprime_total * 2.0 * w.cwiseProduct(e2u) / mass;

  // chain rule through X and the carre du champ
  Eigen::VectorXd y = 2.0 * w.cwiseProduct((R - 2.0 * X).eval());
  Eigen::VectorXd Dty = Delta.transpose() * y;
  Eigen::VectorXd gIII = Dty + 0.5 * (y.cwiseProduct(du) +
                                      Delta.transpose() * y.cwiseProduct(u).eval() -
                                      u.cwiseProduct(Dty));

  Eigen::VectorXd h = R - gsq / 3.0 - du;
  Eigen::VectorXd z = w.cwiseProduct((T * u).eval());
  Eigen::VectorXd Dtz = Delta.transpose() * z;
  Eigen::VectorXd gIV =
      -2.0 * (T.transpose() * w.cwiseProduct(h).eval() -
              (z.cwiseProduct(du) + Delta.transpose() * z.cwiseProduct(u).eval() -
               u.cwiseProduct(Dtz)) /
                  3.0 -
              Dtz);

  return kC1 * gII + c2 * gIII + c3 * gIV;
}

}  // namespace crdet
