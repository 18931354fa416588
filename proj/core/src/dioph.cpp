#include "ldsolve/dioph.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "ldsolve/elliott.hpp"
#include "ldsolve/xin.hpp"

namespace ldsolve {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
    case Relation::StrictlyGreater: return ">";
  }
  return "?";
}

void validate(const ConstraintSystem& sys) {
  std::set<std::string, std::less<>> seen;
  for (const auto& v : sys.variables)
    if (!seen.insert(v).second) throw std::invalid_argument("variable " + v + " declared twice");
  for (std::size_t i = 0; i < sys.constraints.size(); ++i)
    for (const auto& [v, _] : sys.constraints[i].coeffs)
      if (!seen.count(v))
        throw Error(ErrorKind::UnknownVariable,
                    "constraint " + std::to_string(i) + " uses undeclared variable " + v);
}

NormalizedSystem normalize_system(const ConstraintSystem& sys) {
  NormalizedSystem out;
  out.system.variables = sys.variables;
  for (const auto& c : sys.constraints) {
    Constraint n;
    for (const auto& [v, a] : c.coeffs)
      if (a != 0) n.coeffs.emplace(v, a);
    n.constant = c.constant;
    n.rel = c.rel;
    if (n.rel == Relation::StrictlyGreater) {
      // Over the integers, e > 0 iff e - 1 >= 0.
      n.rel = Relation::GreaterEqual;
      n.constant -= 1;
    }
    if (n.coeffs.empty()) {
      bool holds = n.rel == Relation::Equal ? n.constant == 0 : n.constant >= 0;
      if (!holds) out.infeasible = true;
      continue;
    }
    out.system.constraints.push_back(std::move(n));
  }
  return out;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
  if (!used(base)) return base;
  for (int i = 1;; ++i) {
    std::string s = base + std::to_string(i);
    if (!used(s)) return s;
  }
}

Homogenized homogenize(const ConstraintSystem& sys) {
  Homogenized h;
  h.system = sys;
  bool any = std::any_of(sys.constraints.begin(), sys.constraints.end(),
                         [](const Constraint& c) { return c.constant != 0; });
  if (!any) return h;
  std::string u = fresh_name("u", sys.variables);
  h.u = u;
  h.system.variables.push_back(u);
  for (auto& c : h.system.constraints) {
    if (c.constant != 0) c.coeffs[u] = c.constant;
    c.constant = 0;
  }
  return h;
}

namespace {

using Summands = std::vector<NiceRational>;

Summands merge_by_denominator(const Summands& parts) {
  std::map<Denominator, LaurentPolynomial, DenominatorLess> acc;
  for (const auto& p : parts)
    if (!p.is_zero()) acc[p.denominator()] += p.numerator();
  Summands out;
  for (auto& [den, num] : acc)
    if (!num.is_zero()) out.push_back(normalize(NiceRational(std::move(num), den)));
  return out;
}

// Elliott works termwise and hands back one summand per denominator; Xin
// returns a single fraction.
Summands apply_constraint(const Summands& f, const Constraint& c, const std::string& z, const SolveOptions& opts,
                          std::size_t index) {
  Substitution sigma;
  for (const auto& [v, a] : c.coeffs) sigma[v] = ExponentVector::var(v) + ExponentVector::var(z, a);
  StepBudget budget(opts.step_ceiling);
  Summands out;
  try {
    for (const auto& term : f) {
      NiceRational g = substitute_monomial(term, sigma);
      if (opts.observer) opts.observer(index, z, g);
      if (opts.engine == Engine::Elliott) {
        auto terms = elliott_expand(g, z, &budget);
        auto parts = c.rel == Relation::Equal ? constant_term_parts(terms, z) : nonneg_parts(terms, z, false);
        out.insert(out.end(), parts.begin(), parts.end());
      } else {
        out.push_back(c.rel == Relation::Equal ? xin_constant(g, z, &budget)
                                               : eval_at(xin_nonneg(g, z, &budget), z, 1));
      }
    }
  } catch (const BudgetExhausted& e) {
    throw StepCeilingExceeded(index, e.ceiling);
  } catch (const Error& e) {
    throw Error(e.kind(), "constraint " + std::to_string(index) + ": " + e.detail());
  }
  if (opts.engine == Engine::Elliott) return merge_by_denominator(out);
  NiceRational h = reduce_factors(sum_reduced(std::move(out)));
  return h.is_zero() ? Summands{} : Summands{h};
}

}  // namespace

NiceRational characteristic_series(const ConstraintSystem& sys, const SolveOptions& opts) {
  validate(sys);
  NormalizedSystem norm = normalize_system(sys);
  if (norm.infeasible) return NiceRational{};
  Homogenized hom = homogenize(norm.system);
  const auto& vars = hom.system.variables;
  std::string z = fresh_name("z", vars);
  // Substitution and both constant-term operators preserve the degree in u,
  // and only its degree-1 coefficient is read at the end, so the start
  // keeps just u / prod(1 - t_i) instead of carrying a (1 - u) factor.
  NiceRational start;
  if (hom.u) {
    std::vector<std::string> xs;
    for (const auto& v : vars)
      if (v != *hom.u) xs.push_back(v);
    start = nr_shift(NiceRational::free_monoid(xs), ExponentVector::var(*hom.u));
  } else {
    start = NiceRational::free_monoid(vars);
  }
  Summands f{start};
  for (std::size_t i = 0; i < hom.system.constraints.size(); ++i) {
    f = apply_constraint(f, hom.system.constraints[i], z, opts, i);
    if (opts.trace && opts.verbosity > 0) {
      *opts.trace << "constraint " << i << ":";
      for (const auto& t : f) *opts.trace << "  " << render(t);
      *opts.trace << '\n';
    }
    if (f.empty()) return NiceRational{};
  }
  if (hom.u)
    for (auto& t : f) t = coefficient_of(t, *hom.u, 1);
  return reduce_factors(sum_reduced(std::move(f)));
}

// ------------------------------------------------------------------- Euler

namespace {

struct EulerSetup {
  NiceRational series;
  VarSet tags;
  ExponentVector target;
  long degree = 0;
};

EulerSetup euler_setup(const ConstraintSystem& eqs, const std::vector<long>& rhs, bool tag_solutions) {
  validate(eqs);
  if (rhs.size() != eqs.constraints.size())
    throw std::invalid_argument("right-hand side length does not match the number of rows");
  std::vector<std::string> taken = eqs.variables;
  std::vector<std::string> tag_names;
  for (std::size_t i = 0; i < eqs.constraints.size(); ++i) {
    const Constraint& c = eqs.constraints[i];
    if (c.rel != Relation::Equal)
      throw Error(ErrorKind::HypothesisViolated, "row " + std::to_string(i) + " is not an equation");
    std::string t = fresh_name("tag" + std::to_string(i), taken);
    taken.push_back(t);
    tag_names.push_back(t);
  }
  EulerSetup s;
  Denominator den;
  for (const auto& v : eqs.variables) {
    ExponentVector m;
    for (std::size_t i = 0; i < eqs.constraints.size(); ++i) {
      auto it = eqs.constraints[i].coeffs.find(v);
      long a = it == eqs.constraints[i].coeffs.end() ? 0 : it->second;
      if (a < 0)
        throw Error(ErrorKind::HypothesisViolated,
                    "negative coefficient of " + v + " in row " + std::to_string(i));
      m.set(tag_names[i], a);
    }
    if (m.empty()) throw Error(ErrorKind::HypothesisViolated, "variable " + v + " has an all-zero column");
    if (tag_solutions) m.set(v, 1);
    den[m] += 1;
  }
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (rhs[i] < 0) return s;  // no solutions; series stays zero
    s.target.set(tag_names[i], rhs[i]);
    s.degree += rhs[i];
  }
  s.tags = VarSet(tag_names.begin(), tag_names.end());
  s.series = NiceRational(LaurentPolynomial(1), std::move(den));
  return s;
}

LaurentPolynomial euler_coefficient(const EulerSetup& s) {
  LaurentPolynomial out;
  if (s.series.is_zero()) return out;
  LaurentPolynomial e = expand_truncated(s.series, s.tags, s.degree);
  for (const auto& [m, c] : e.terms())
    if (m.restricted(s.tags) == s.target) out.add_term(m - s.target, c);
  return out;
}

}  // namespace

std::vector<long> rhs_of(const ConstraintSystem& eqs) {
  std::vector<long> b;
  for (const auto& c : eqs.constraints) b.push_back(-c.constant);
  return b;
}

mpz_class euler_count(const ConstraintSystem& eqs, const std::vector<long>& rhs) {
  Rational total = 0;
  LaurentPolynomial slice = euler_coefficient(euler_setup(eqs, rhs, false));
  for (const auto& [_, c] : slice.terms()) total += c;
  return total.get_num();
}

std::vector<ExponentVector> euler_solutions(const ConstraintSystem& eqs, const std::vector<long>& rhs) {
  std::vector<ExponentVector> out;
  LaurentPolynomial slice = euler_coefficient(euler_setup(eqs, rhs, true));
  for (const auto& [m, _] : slice.terms()) out.push_back(m);
  std::sort(out.begin(), out.end(), LexLess{});
  std::reverse(out.begin(), out.end());
  return out;
}

// ----------------------------------------------------------------- weights

NiceRational weight_substitution(const NiceRational& chi, const std::map<std::string, long>& weights,
                                 const std::string& tracker) {
  if (chi.variables().count(tracker)) throw std::invalid_argument("tracker " + tracker + " already occurs");
  Substitution sigma;
  for (const auto& [v, w] : weights)
    if (w != 0) sigma[v] = ExponentVector::var(v) + ExponentVector::var(tracker, w);
  if (sigma.empty()) return chi;
  return substitute_monomial(chi, sigma);
}

NiceRational weight_slice(const NiceRational& omega, const std::string& tracker, long k) {
  bool laurent_factor = false;
  for (const auto& [m, _] : omega.denominator()) laurent_factor = laurent_factor || m.get(tracker) < 0;
  if (!laurent_factor) {
    // Shift so the numerator is a power series in the tracker.
    long s = omega.is_zero() ? 0 : std::max(0L, -omega.numerator().min_exponent(tracker));
    if (k + s < 0) return NiceRational{};
    return coefficient_of(nr_shift(omega, ExponentVector::var(tracker, s)), tracker, k + s);
  }
  return xin_constant(nr_shift(omega, ExponentVector::var(tracker, -k)), tracker);
}

std::string render_tuple(const ExponentVector& m, const std::vector<std::string>& vars) {
  std::string s = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(m.get(vars[i]));
  }
  return s + ')';
}

}  // namespace ldsolve
