#pragma once

#include <map>

#include "monomial.hpp"

namespace crdet {

// Finite complex linear combination of monomials on S^3. Representatives are
// not reduced modulo |z1|^2 + |z2|^2 = 1; integration and evaluation are
// well defined on representatives.
class PolyFn {
 public:
  using TermMap = std::map<Monomial, complex>;

  PolyFn() = default;
  explicit PolyFn(double constant) { add_term({}, constant); }

  static PolyFn monomial(Monomial m, complex coeff = 1.0) {
    PolyFn f;
    f.add_term(m, coeff);
    return f;
  }

  // z1^a z2^b (zbar via conjugated exponents)
  static PolyFn holo(int a, int b, complex coeff = 1.0) {
    return monomial({std::uint16_t(a), std::uint16_t(b), 0, 0}, coeff);
  }

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  void add_term(Monomial m, complex coeff);

  PolyFn& operator+=(const PolyFn& g);
  PolyFn& operator-=(const PolyFn& g);
  PolyFn& operator*=(complex s);
  friend PolyFn operator+(PolyFn f, const PolyFn& g) { return f += g; }
  friend PolyFn operator-(PolyFn f, const PolyFn& g) { return f -= g; }
  friend PolyFn operator*(PolyFn f, complex s) { return f *= s; }
  friend PolyFn operator*(complex s, PolyFn f) { return f *= s; }
  PolyFn operator*(const PolyFn& g) const;

  PolyFn conjugated() const;

  // true iff the coefficient map is conjugate-symmetric, i.e. the function is
  // real-valued on S^3 without using the sphere relation
  bool is_real(double tol = 1e-12) const;

  // exact integral against nu = theta ^ dtheta
  double integrate() const;

  complex eval(double eta, double xi1, double xi2) const;

  double max_abs_coeff() const;

  // L^2(nu) inner product <f, g> = integral of f * conj(g), exact
  static complex inner(const PolyFn& f, const PolyFn& g);

 private:
  TermMap terms_;
  static constexpr double kDropTol = 0.0;  // exact zero pruning only
};

}  // namespace crdet
