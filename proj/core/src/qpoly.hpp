#pragma once

// Dense univariate polynomials over Q, used to refine binomials of one ray
// class into a gcd-free basis.

#include <vector>

#include "ldsolve/polyring.hpp"

namespace ldsolve::detail {

using QPoly = std::vector<Rational>;  // coefficient of x^i at index i, no trailing zeros

void trim(QPoly& p);
long degree(const QPoly& p);  // -1 for zero
QPoly one_minus_power(long n);  // 1 - x^n
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly gcd(QPoly a, QPoly b);       // scaled to constant term 1 when nonzero there, else monic
QPoly exact_quotient(const QPoly& a, const QPoly& b);
QPoly scaled_to_unit_constant(QPoly p);

}  // namespace ldsolve::detail
