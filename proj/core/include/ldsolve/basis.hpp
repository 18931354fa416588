#pragma once

#include <optional>
#include <vector>

#include "ldsolve/dioph.hpp"
#include "ldsolve/polyring.hpp"

namespace ldsolve {

inline constexpr std::size_t kDefaultParameterLimit = 64;

// Componentwise order on exponent vectors.
bool dickson_leq(const ExponentVector& a, const ExponentVector& b);

// Minimal elements under the componentwise order, deduplicated and sorted by
// CanonicalLess.
std::vector<ExponentVector> minimal_elements(std::vector<ExponentVector> set);

// Minimal nonzero solutions of one homogeneous equation over `vars`.
std::vector<ExponentVector> gordan_minimal_single(const Constraint& eq, const std::vector<std::string>& vars);

// All solutions whose two sides have common value 1..K, paired from the
// expansions of the positive and negative sides. Variables with coefficient
// zero contribute their unit vectors when K >= 1.
std::vector<ExponentVector> euler_candidates(const Constraint& eq, const std::vector<std::string>& vars, long K);
// (sum of positive coefficients) * (sum of negative magnitudes).
long default_candidate_bound(const Constraint& eq);

// Minimal nonzero solutions of a homogeneous system of equations, by
// successive elimination. Raises ParameterLimit when a round needs more
// than `parameter_limit` parameters.
std::vector<ExponentVector> gordan_minimal_system(const ConstraintSystem& eqs,
                                                  std::size_t parameter_limit = kDefaultParameterLimit);

struct SolutionFamily {
  ExponentVector offset;
  std::vector<ExponentVector> generators;
};

struct SolutionBasis {
  std::vector<ExponentVector> minimal;
  std::optional<std::vector<SolutionFamily>> families;
};

// One family per numerator monomial when every numerator coefficient is +1
// and no factor is repeated; nullopt otherwise.
std::optional<std::vector<SolutionFamily>> parametric_form(const NiceRational& chi);

// Hilbert basis of a homogeneous system; inequalities receive slack variables.
SolutionBasis hilbert_basis(const ConstraintSystem& sys, std::size_t parameter_limit = kDefaultParameterLimit);

}  // namespace ldsolve
