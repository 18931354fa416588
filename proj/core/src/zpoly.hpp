#pragma once

// Polynomials in a distinguished variable z, stored as z-degree slices whose
// coefficients are Laurent polynomials in the remaining variables.
// A localized value carries an extra z-free denominator of binomials (1 - K).

#include <map>
#include <string>

#include "ldsolve/polyring.hpp"

namespace ldsolve::detail {

using ZSlices = std::map<long, LaurentPolynomial>;

ZSlices to_slices(const LaurentPolynomial& p, const std::string& z);
LaurentPolynomial from_slices(const ZSlices& s, const std::string& z);
ZSlices mul(const ZSlices& a, const ZSlices& b);
void add_into(ZSlices& a, const ZSlices& b, const Rational& scale = 1);
ZSlices scaled(const ZSlices& a, const LaurentPolynomial& c);
ZSlices shifted(const ZSlices& a, long k);

// Division by e whose top z-slice is a single monomial term.
void divmod(const ZSlices& p, const ZSlices& e, ZSlices& q, ZSlices& r);
ZSlices mod(const ZSlices& p, const ZSlices& e);

struct Localized {
  ZSlices num;
  Denominator den;  // z-free factors (1 - K)
};

Localized mul(const Localized& a, const Localized& b);
Localized mod(const Localized& a, const ZSlices& e);

}  // namespace ldsolve::detail
