#include "polyfn.hpp"

#include <algorithm>
#include <cmath>

namespace crdet {

int PolyFn::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void PolyFn::add_term(Monomial m, complex coeff) {
  if (coeff == complex(0.0, 0.0)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == complex(0.0, 0.0)) terms_.erase(it);
}

PolyFn& PolyFn::operator+=(const PolyFn& g) {
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

PolyFn& PolyFn::operator-=(const PolyFn& g) {
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

PolyFn& PolyFn::operator*=(complex s) {
  if (s == complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

PolyFn PolyFn::operator*(const PolyFn& g) const {
  PolyFn out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : g.terms_) {
      Monomial m{std::uint16_t(m1.a + m2.a), std::uint16_t(m1.b + m2.b),
                 std::uint16_t(m1.c + m2.c), std::uint16_t(m1.d + m2.d)};
      out.add_term(m, c1 * c2);
    }
  }
  return out;
}

PolyFn PolyFn::conjugated() const {
  PolyFn out;
  for (const auto& [m, c] : terms_) out.add_term(m.conjugated(), std::conj(c));
  return out;
}

bool PolyFn::is_real(double tol) const {
  const double scale = std::max(1.0, max_abs_coeff());
  for (const auto& [m, c] : terms_) {
    auto it = terms_.find(m.conjugated());
    const complex other = (it == terms_.end()) ? complex(0.0) : it->second;
    if (std::abs(std::conj(c) - other) > tol * scale) return false;
  }
  return true;
}

double PolyFn::integrate() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    if (m.a == m.c && m.b == m.d) s += c.real() * mono_integrate(m);
  }
  return s;
}

complex PolyFn::eval(double eta, double xi1, double xi2) const {
  complex s = 0.0;
  for (const auto& [m, c] : terms_) s += c * mono_eval(m, eta, xi1, xi2);
  return s;
}

double PolyFn::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mm, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

complex PolyFn::inner(const PolyFn& f, const PolyFn& g) {
  complex s = 0.0;
  for (const auto& [m1, c1] : f.terms()) {
    for (const auto& [m2, c2] : g.terms()) {
      // conj(g) swaps exponents; the product integrates iff total exponents match
      Monomial m{std::uint16_t(m1.a + m2.c), std::uint16_t(m1.b + m2.d),
                 std::uint16_t(m1.c + m2.a), std::uint16_t(m1.d + m2.b)};
      if (m.a == m.c && m.b == m.d) s += c1 * std::conj(c2) * mono_integrate(m);
    }
  }
  return s;
}

}  // namespace crdet
