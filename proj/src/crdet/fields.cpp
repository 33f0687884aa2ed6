#include "fields.hpp"

namespace crdet {

namespace {

void check_cap(const PolyFn& f, int cap, const char* who) {
  if (f.degree() > cap) {
    throw DegreeCapExceeded(std::string(who) + ": polynomial degree exceeds cap");
  }
}

}  // namespace

PolyFn apply_field(const PolyFn& f, Field field, int degree_cap) {
  check_cap(f, degree_cap, "apply_field");
  PolyFn out;
  for (const auto& [m, c] : f.terms()) {
    switch (field) {
      case Field::Z1:
        if (m.a > 0)
          out.add_term({std::uint16_t(m.a - 1), m.b, m.c, std::uint16_t(m.d + 1)},
                       c * double(m.a));
        if (m.b > 0)
          out.add_term({m.a, std::uint16_t(m.b - 1), std::uint16_t(m.c + 1), m.d},
                       -c * double(m.b));
        break;
      case Field::Z1bar:
        if (m.c > 0)
          out.add_term({m.a, std::uint16_t(m.b + 1), std::uint16_t(m.c - 1), m.d},
                       c * double(m.c));
        if (m.d > 0)
          out.add_term({std::uint16_t(m.a + 1), m.b, m.c, std::uint16_t(m.d - 1)},
                       -c * double(m.d));
        break;
      case Field::T:
        out.add_term(m, c * complex(0.0, double(m.a) + double(m.b) - double(m.c) - double(m.d)));
        break;
    }
  }
  return out;
}

PolyFn sublaplacian(const PolyFn& f, int degree_cap) {
  PolyFn zf = apply_field(f, Field::Z1, degree_cap);
  PolyFn zbf = apply_field(f, Field::Z1bar, degree_cap);
  PolyFn out = apply_field(zbf, Field::Z1, degree_cap) + apply_field(zf, Field::Z1bar, degree_cap);
  out *= -1.0;
  return out;
}

PolyFn horizontal_grad_sq(const PolyFn& u, int degree_cap) {
  if (!u.is_real()) throw Error("horizontal_grad_sq: input must be real");
  check_cap(u, degree_cap / 2, "horizontal_grad_sq");
  PolyFn zu = apply_field(u, Field::Z1, degree_cap);
  return 2.0 * (zu * zu.conjugated());
}

bool is_pluriharmonic(const PolyFn& f) {
  for (const auto& [m, c] : f.terms()) {
    const bool holo = (m.c == 0 && m.d == 0);
    const bool anti = (m.a == 0 && m.b == 0);
    if (!holo && !anti) return false;
  }
  return true;
}

PolyFn pprime_formula(const PolyFn& f, int degree_cap) {
  if (!is_pluriharmonic(f)) throw Error("pprime_formula: input must be pluriharmonic");
  PolyFn df = sublaplacian(f, degree_cap);
  PolyFn ddf = sublaplacian(df, degree_cap);
  return 4.0 * ddf + 4.0 * df;
}

}  // namespace crdet
