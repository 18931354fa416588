#pragma once

#include <string>
#include <vector>

#include "ldsolve/budget.hpp"
#include "ldsolve/polyring.hpp"

namespace ldsolve {

enum class FactorClass { Contributing, NonContributing, PureZ };

const char* to_string(FactorClass c);

// A polynomial in z with Laurent coefficients in the other variables.
struct ZFactor {
  LaurentPolynomial poly;
  int multiplicity = 1;
};

// numerator / (z^zpower * prod factor^mult * prod_{z_free} (1 - M)^k).
// Factors 1 - M z^b with b < 0 are stored as z^c - M.
struct ZFraction {
  LaurentPolynomial numerator;  // no negative powers of z
  long zpower = 0;
  std::vector<ZFactor> factors;
  Denominator z_free;
};

ZFraction to_zfraction(const NiceRational& f, const std::string& z);
NiceRational from_zfraction(const ZFraction& zf, const std::string& z);

FactorClass classify_factor(const LaurentPolynomial& p, const std::string& z);

// Gcd-free basis of binomial factors (and powers of z): pairwise coprime
// polynomials whose power product is the input product. Contributing factors
// are scaled to constant term 1, the others are monic in z.
std::vector<ZFactor> coprime_basis(const std::vector<ZFactor>& factors, const std::string& z);

// One summand numerator / prod denominator. The numerator may carry a z-free
// denominator of binomials arising from the decomposition; its z-degree is
// below that of the denominator product.
struct FractionPart {
  NiceRational numerator;
  std::vector<ZFactor> denominator;
  FactorClass tag = FactorClass::Contributing;
};

// f = polynomial_part + sum(parts), all over the z-free factors.
struct PartialFractions {
  LaurentPolynomial polynomial_part;
  std::vector<FractionPart> parts;
  Denominator z_free;
};

PartialFractions partial_fraction_z(const ZFraction& zf, const std::string& z);
NiceRational recombine(const PartialFractions& pf, const std::string& z);

// Sum of the terms f_n z^n with n >= 0.
NiceRational xin_nonneg(const NiceRational& f, const std::string& z, StepBudget* budget = nullptr);
// The z^0 coefficient.
NiceRational xin_constant(const NiceRational& f, const std::string& z, StepBudget* budget = nullptr);

}  // namespace ldsolve
