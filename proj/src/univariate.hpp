#pragma once

// Dense univariate integer polynomials (ascending coefficients) used to split
// a polynomial into squarefree layers before numerical root finding.

#include <vector>

#include "fkdet/rational.hpp"

namespace fkdet::detail {

using IntPoly = std::vector<Integer>;

void trim(IntPoly& p);
int degree(const IntPoly& p);  // -1 for the zero polynomial
IntPoly derivative(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
/// Pseudo-division: lc(b)^(deg a - deg b + 1) a = q b + r.
void pseudo_divide(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);
/// Primitive gcd with positive leading coefficient (primitive PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
/// Fast sufficient test: gcd(p, p') is trivial modulo a 61-bit prime.
bool squarefree_mod_prime(const IntPoly& p);

/// Squarefree layers s_1, s_2, ... with p ~ s_1 s_2 ... and every root of
/// p of multiplicity m appearing once in each of s_1, ..., s_m.
std::vector<IntPoly> squarefree_layers(const IntPoly& p);

}  // namespace fkdet::detail
