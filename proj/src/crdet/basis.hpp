#pragma once

#include <Eigen/Dense>
#include <memory>

#include "fields.hpp"
#include "quadrature.hpp"

namespace crdet {

enum class EntryType { Constant, Holomorphic, Antiholomorphic };

struct BasisEntry {
  PolyFn fn;
  int degree = 0;
  EntryType type = EntryType::Constant;
  double norm2 = 0.0;  // exact L^2(nu) norm squared
};

// Pluriharmonic spectral basis on S^3 up to degree N: the constant, the
// holomorphic monomials z1^a z2^b with a+b = j <= N, and their conjugates.
// dimension = 1 + 2 sum_{j=1..N} (j+1) = N^2 + 3N + 1.
class PluriBasis {
 public:
  static PluriBasis build(int N);

  int truncation_degree() const { return N_; }
  int dimension() const { return int(entries_.size()); }
  const std::vector<BasisEntry>& entries() const { return entries_; }

  // Real spanning elements of the same dimension: index 0 is the constant,
  // then per holomorphic monomial phi the pair phi + conj(phi), i(phi - conj(phi)).
  int real_dim() const { return dimension(); }
  const PolyFn& real_element(int k) const { return real_elems_[k]; }
  int real_degree(int k) const { return real_degree_[k]; }
  double real_norm2(int k) const { return real_norm2_[k]; }

 private:
  int N_ = 0;
  std::vector<BasisEntry> entries_;
  std::vector<PolyFn> real_elems_;
  std::vector<int> real_degree_;
  std::vector<double> real_norm2_;
};

// Basis + quadrature with per-element grid caches used by every downstream
// module. All matrices are (dim x nodes).
struct SphereContext {
  PluriBasis basis;
  GridQuadrature grid;

  Eigen::MatrixXd E;    // element values
  Eigen::MatrixXcd Z;   // Z1 applied to elements
  Eigen::MatrixXd D;    // Delta_b applied to elements
  Eigen::MatrixXd Tg;   // T applied to elements
  Eigen::VectorXd lam_b;     // Delta_b eigenvalue (= degree j)
  Eigen::VectorXd lam_pane;  // j (j + 1), unit spectral normalization
  Eigen::VectorXd norm2;     // exact diagonal Gram
  Eigen::MatrixXd G_Q;       // quadrature Gram (near diagonal)
  Eigen::LLT<Eigen::MatrixXd> G_Q_llt;

  SphereContext(int N, int n_eta, int n_xi);

  int dim() const { return basis.real_dim(); }
  std::size_t nodes() const { return grid.size(); }

  // <u, A v> with A = kappa * j(j+1) diagonal in the real elements (exact)
  double quad_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double kappa) const;

  // integral of the spanned function: only the constants coordinate survives
  double mean_integral(const Eigen::VectorXd& u) const { return kVol * u[0]; }
};

using ContextPtr = std::shared_ptr<const SphereContext>;

ContextPtr make_context(int N, int n_eta, int n_xi);

}  // namespace crdet
