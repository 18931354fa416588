#pragma once

#include <array>
#include <string>
#include <vector>

#include "ldsolve/budget.hpp"
#include "ldsolve/polyring.hpp"

namespace ldsolve {

// sign * z^zshift * body, where body's numerator is free of z and each
// denominator factor is 1 - M z^b.
struct ZTerm {
  int sign = 1;
  NiceRational body;
  long zshift = 0;
};

enum class Purity { Positive, Negative, Mixed };

// Factors free of z count as both; a term with no z factor is Positive.
Purity purity(const ZTerm& term, const std::string& z);

// Positive z-exponents and negative magnitudes, each sorted descending.
struct Signature {
  std::vector<long> positives;
  std::vector<long> negatives;
  friend bool operator==(const Signature&, const Signature&) = default;
};
// Partition order on positives, ties broken on negatives.
bool operator<(const Signature& a, const Signature& b);
Signature signature(const ZTerm& term, const std::string& z);

// Index into term.body.factors(): `i` has positive z-exponent, `m` negative.
std::array<ZTerm, 3> elliott_split(const ZTerm& term, std::size_t i, std::size_t m, const std::string& z);

// Rewrites until every term is pure in z. Each split ticks the budget.
std::vector<ZTerm> elliott_decompose(const ZTerm& term, const std::string& z, StepBudget* budget = nullptr);

// One term per z-degree of f's numerator, then decomposed.
std::vector<ZTerm> elliott_expand(const NiceRational& f, const std::string& z, StepBudget* budget = nullptr);

// Signed sum of the terms as one rational function.
NiceRational zterm_sum(const std::vector<ZTerm>& terms, const std::string& z);

NiceRational constant_term_z(const std::vector<ZTerm>& terms, const std::string& z);
// Sum of the nonnegative z-powers, evaluated at z = 1 unless retain_z is set.
NiceRational nonneg_part_z(const std::vector<ZTerm>& terms, const std::string& z, bool retain_z = false);

// The same operators before the final summation: one summand per distinct
// denominator among the terms. Summing them is the caller's choice.
std::vector<NiceRational> constant_term_parts(const std::vector<ZTerm>& terms, const std::string& z);
std::vector<NiceRational> nonneg_parts(const std::vector<ZTerm>& terms, const std::string& z, bool retain_z = false);

}  // namespace ldsolve
