#include "monomial.hpp"

#include <cmath>

namespace crdet {

double mono_integrate(const Monomial& m) {
  if (m.a != m.c || m.b != m.d) return 0.0;
  const int a = m.a, b = m.b;
  if (a + b <= 20) {
    // a! b! / (a+b+1)! = 1 / ((a+b+1) * C(a+b, a)); C(20,10) fits a double exactly
    double binom = 1.0;
    for (int i = 1; i <= a; ++i) binom = binom * double(b + i) / double(i);
    return kVol / (double(a + b + 1) * binom);
  }
  const double lg = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
  return kVol * std::exp(lg);
}

complex mono_eval(const Monomial& m, double eta, double xi1, double xi2) {
  const double ce = std::cos(eta), se = std::sin(eta);
  const double mag = std::pow(ce, int(m.a) + int(m.c)) * std::pow(se, int(m.b) + int(m.d));
  const double ph = m.phase1() * xi1 + m.phase2() * xi2;
  return mag * complex(std::cos(ph), std::sin(ph));
}

}  // namespace crdet
