#pragma once

#include "polyfn.hpp"

namespace crdet {

enum class Field { Z1, Z1bar, T };

// Tangential CR fields on S^3:
//   Z1   = z2bar d/dz1 - z1bar d/dz2
//   Z1bar = conjugate field
//   T    = i (z1 d/dz1 + z2 d/dz2 - z1bar d/dz1bar - z2bar d/dz2bar)
// Normalized so that T z1^j = i j z1^j and the sub-Laplacian below has
// eigenvalue j on degree-j holomorphic polynomials.
PolyFn apply_field(const PolyFn& f, Field field, int degree_cap = 64);

// Delta_b = -(Z1 Z1bar + Z1bar Z1); positive spectrum convention.
PolyFn sublaplacian(const PolyFn& f, int degree_cap = 64);

// |grad_b u|^2 := 2 Z1(u) conj(Z1(u)) for real u; fixed by the calibration
// identity Delta_b(u^2) = 2 u Delta_b(u) - 2 |grad_b u|^2.
PolyFn horizontal_grad_sq(const PolyFn& u, int degree_cap = 64);

// true iff every term is purely holomorphic or purely antiholomorphic
bool is_pluriharmonic(const PolyFn& f);

// P' on the standard sphere (torsion 0, R = 2): 4 Delta_b^2 f + 4 Delta_b f.
// Exposes the factor-4 normalization gap against the unit spectral convention.
PolyFn pprime_formula(const PolyFn& f, int degree_cap = 64);

}  // namespace crdet
