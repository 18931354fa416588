#pragma once

#include <gmpxx.h>

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldsolve/budget.hpp"
#include "ldsolve/polyring.hpp"

namespace ldsolve {

enum class Relation { Equal, GreaterEqual, StrictlyGreater };

const char* to_string(Relation r);

// sum coeffs[v] * v + constant  (rel)  0
struct Constraint {
  std::map<std::string, long, std::less<>> coeffs;
  long constant = 0;
  Relation rel = Relation::Equal;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct ConstraintSystem {
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;
  friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;
};

enum class Engine { Elliott, Xin };

struct SolveOptions {
  Engine engine = Engine::Xin;
  std::size_t step_ceiling = kDefaultStepCeiling;
  int verbosity = 0;
  std::ostream* trace = nullptr;  // receives one line per constraint when verbosity > 0
  // Sees every substituted series handed to the engine, with its constraint
  // index and the name of the auxiliary variable.
  std::function<void(std::size_t, const std::string&, const NiceRational&)> observer;
};

// Raises UnknownVariable for coefficients on undeclared names and rejects
// duplicate declarations.
void validate(const ConstraintSystem& sys);

struct NormalizedSystem {
  ConstraintSystem system;
  bool infeasible = false;
};

// Strict rows become >= with the constant lowered by one; rows without
// variables are decided and dropped.
NormalizedSystem normalize_system(const ConstraintSystem& sys);

struct Homogenized {
  ConstraintSystem system;
  std::optional<std::string> u;  // absent when every constant is zero
};

Homogenized homogenize(const ConstraintSystem& sys);

// A name starting with `base` that is not in `taken`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

NiceRational characteristic_series(const ConstraintSystem& sys, const SolveOptions& opts = {});

// Rows read as sum a_ij x_j = rhs_i with a_ij >= 0.
mpz_class euler_count(const ConstraintSystem& eqs, const std::vector<long>& rhs);
std::vector<ExponentVector> euler_solutions(const ConstraintSystem& eqs, const std::vector<long>& rhs);
// The right-hand sides -constant_i of the rows.
std::vector<long> rhs_of(const ConstraintSystem& eqs);

// x_i -> x_i * tracker^w_i. Negative tracker exponents stay in the factors.
NiceRational weight_substitution(const NiceRational& chi, const std::map<std::string, long>& weights,
                                 const std::string& tracker);
// The tracker^k slice of a weighted series.
NiceRational weight_slice(const NiceRational& omega, const std::string& tracker, long k);

// Text form: one constraint per line, optional "variables:" header.
ConstraintSystem parse_constraints(std::string_view text);
ConstraintSystem parse_constraints_json(std::string_view text);
// Picks the machine format when the text starts with '{'.
ConstraintSystem parse_input(std::string_view text);
std::string render(const Constraint& c, const std::vector<std::string>& order);
std::string render(const ConstraintSystem& sys);
std::string render_json(const ConstraintSystem& sys);

// Exponents in the order of `vars`, as "(a,b,c)".
std::string render_tuple(const ExponentVector& m, const std::vector<std::string>& vars);

}  // namespace ldsolve
