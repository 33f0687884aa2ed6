#pragma once

#include <compare>
#include <cstdint>

#include "common.hpp"

namespace crdet {

// Exponents of z1^a z2^b z1bar^c z2bar^d restricted to S^3 in C^2.
struct Monomial {
  std::uint16_t a = 0;
  std::uint16_t b = 0;
  std::uint16_t c = 0;
  std::uint16_t d = 0;

  auto operator<=>(const Monomial&) const = default;

  int degree() const { return int(a) + int(b) + int(c) + int(d); }

  Monomial conjugated() const { return {c, d, a, b}; }

  // holomorphic degree minus antiholomorphic degree in each slot;
  // drives phase orthogonality in the Hopf angles
  int phase1() const { return int(a) - int(c); }
  int phase2() const { return int(b) - int(d); }
};

// Integral of the monomial over S^3 against nu = theta ^ dtheta.
// Vanishes unless a == c and b == d; the diagonal value is
// 4 pi^2 a! b! / (a + b + 1)!, evaluated exactly (rational multiple of pi^2)
// up to degree 20 and via lgamma beyond.
double mono_integrate(const Monomial& m);

// Value of the monomial at Hopf coordinates
// z1 = cos(eta) e^{i xi1}, z2 = sin(eta) e^{i xi2}.
complex mono_eval(const Monomial& m, double eta, double xi1, double xi2);

}  // namespace crdet
