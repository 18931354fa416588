#include "ldsolve/basis.hpp"

#include <algorithm>
#include <functional>

namespace ldsolve {

bool dickson_leq(const ExponentVector& a, const ExponentVector& b) {
  for (const auto& [n, e] : a.entries())
    if (e > b.get(n)) return false;
  for (const auto& [n, e] : b.entries())
    if (e < 0 && a.get(n) > e) return false;
  return true;
}

std::vector<ExponentVector> minimal_elements(std::vector<ExponentVector> set) {
  std::sort(set.begin(), set.end(), CanonicalLess{});
  set.erase(std::unique(set.begin(), set.end()), set.end());
  std::vector<ExponentVector> out;
  for (const auto& x : set) {
    bool dominated = std::any_of(out.begin(), out.end(), [&](const ExponentVector& y) { return dickson_leq(y, x); });
    if (!dominated) out.push_back(x);
  }
  return out;
}

namespace {

struct Split {
  std::vector<std::pair<std::string, long>> pos;  // variable, coefficient
  std::vector<std::pair<std::string, long>> neg;  // variable, magnitude
  std::vector<std::string> zero;
  long sum_pos = 0;
  long sum_neg = 0;
};

Split split_equation(const Constraint& eq, const std::vector<std::string>& vars) {
  if (eq.rel != Relation::Equal || eq.constant != 0)
    throw Error(ErrorKind::HypothesisViolated, "expected a homogeneous equation");
  Split s;
  for (const auto& v : vars) {
    auto it = eq.coeffs.find(v);
    long a = it == eq.coeffs.end() ? 0 : it->second;
    if (a > 0) {
      s.pos.emplace_back(v, a);
      s.sum_pos += a;
    } else if (a < 0) {
      s.neg.emplace_back(v, -a);
      s.sum_neg -= a;
    } else {
      s.zero.push_back(v);
    }
  }
  for (const auto& [v, _] : eq.coeffs)
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw Error(ErrorKind::UnknownVariable, "equation uses undeclared variable " + v);
  return s;
}

// Every assignment of `side` (each entry bounded by `cap`) with weighted sum `target`.
void hit_target(const std::vector<std::pair<std::string, long>>& side, std::size_t i, long target, long cap,
                ExponentVector& cur, std::vector<ExponentVector>& out) {
  if (i == side.size()) {
    if (target == 0) out.push_back(cur);
    return;
  }
  const auto& [v, a] = side[i];
  for (long k = 0; k <= cap && k * a <= target; ++k) {
    cur.set(v, k);
    hit_target(side, i + 1, target - k * a, cap, cur, out);
  }
  cur.set(v, 0);
}

void box(const std::vector<std::pair<std::string, long>>& side, std::size_t i, long cap, ExponentVector& cur,
         long value, const std::function<void(const ExponentVector&, long)>& visit) {
  if (i == side.size()) {
    visit(cur, value);
    return;
  }
  const auto& [v, a] = side[i];
  for (long k = 0; k <= cap; ++k) {
    cur.set(v, k);
    box(side, i + 1, cap, cur, value + k * a, visit);
  }
  cur.set(v, 0);
}

}  // namespace

std::vector<ExponentVector> gordan_minimal_single(const Constraint& eq, const std::vector<std::string>& vars) {
  Split s = split_equation(eq, vars);
  std::vector<ExponentVector> found;
  for (const auto& v : s.zero) found.push_back(ExponentVector::var(v));
  if (!s.pos.empty() && !s.neg.empty()) {
    // Minimal solutions satisfy r_i <= sum of negative magnitudes and
    // s_j <= sum of positive coefficients.
    ExponentVector r;
    box(s.pos, 0, s.sum_neg, r, 0, [&](const ExponentVector& rv, long target) {
      if (target == 0) return;
      std::vector<ExponentVector> sides;
      ExponentVector cur;
      hit_target(s.neg, 0, target, s.sum_pos, cur, sides);
      for (const auto& sv : sides) found.push_back(rv + sv);
    });
  }
  return minimal_elements(std::move(found));
}

long default_candidate_bound(const Constraint& eq) {
  long p = 0;
  long n = 0;
  for (const auto& [_, a] : eq.coeffs) (a > 0 ? p : n) += std::labs(a);
  return p * n;
}

std::vector<ExponentVector> euler_candidates(const Constraint& eq, const std::vector<std::string>& vars, long K) {
  Split s = split_equation(eq, vars);
  std::vector<ExponentVector> out;
  if (K < 1) return out;
  for (const auto& v : s.zero) out.push_back(ExponentVector::var(v));
  std::string w = fresh_name("w", vars);
  auto side_series = [&](const std::vector<std::pair<std::string, long>>& side) {
    Denominator den;
    for (const auto& [v, a] : side) den[ExponentVector::var(v) + ExponentVector::var(w, a)] += 1;
    return expand_truncated(NiceRational(LaurentPolynomial(1), den), VarSet{w}, K).slices(w);
  };
  auto T = side_series(s.pos);
  auto U = side_series(s.neg);
  for (long k = 1; k <= K; ++k) {
    auto t = T.find(k);
    auto u = U.find(k);
    if (t == T.end() || u == U.end()) continue;
    for (const auto& [mt, _] : t->second.terms())
      for (const auto& [mu, __] : u->second.terms()) out.push_back(mt + mu);
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ExponentVector> gordan_minimal_system(const ConstraintSystem& eqs, std::size_t parameter_limit) {
  std::vector<ExponentVector> current;
  for (const auto& v : eqs.variables) current.push_back(ExponentVector::var(v));
  for (const auto& eq : eqs.constraints) {
    split_equation(eq, eqs.variables);
    if (current.size() > parameter_limit)
      throw Error(ErrorKind::ParameterLimit, std::to_string(current.size()) + " parameters exceed the limit of " +
                                                 std::to_string(parameter_limit));
    // Solutions so far are N-combinations of `current`; restate eq in them.
    std::vector<std::string> params;
    Constraint induced;
    for (std::size_t i = 0; i < current.size(); ++i) {
      params.push_back("p" + std::to_string(i));
      long c = 0;
      for (const auto& [v, a] : eq.coeffs) c += a * current[i].get(v);
      if (c != 0) induced.coeffs[params.back()] = c;
    }
    std::vector<ExponentVector> next;
    for (const auto& t : gordan_minimal_single(induced, params)) {
      ExponentVector x;
      for (std::size_t i = 0; i < params.size(); ++i) x = x + current[i].scaled(t.get(params[i]));
      next.push_back(x);
    }
    current = minimal_elements(std::move(next));
  }
  std::sort(current.begin(), current.end(), CanonicalLess{});
  return current;
}

std::optional<std::vector<SolutionFamily>> parametric_form(const NiceRational& chi) {
  std::vector<SolutionFamily> out;
  if (chi.is_zero()) return out;
  std::vector<ExponentVector> gens;
  for (const auto& [m, k] : chi.denominator()) {
    if (k != 1 || !m.is_nonnegative()) return std::nullopt;
    gens.push_back(m);
  }
  std::vector<ExponentVector> offsets;
  for (const auto& [m, c] : chi.numerator().terms()) {
    if (c != 1 || !(m.empty() || m.is_nonnegative())) return std::nullopt;
    offsets.push_back(m);
  }
  std::sort(offsets.begin(), offsets.end(), CanonicalLess{});
  for (const auto& o : offsets) out.push_back({o, gens});
  return out;
}

SolutionBasis hilbert_basis(const ConstraintSystem& sys, std::size_t parameter_limit) {
  validate(sys);
  ConstraintSystem lifted;
  lifted.variables = sys.variables;
  std::vector<std::string> slacks;
  for (const auto& c : sys.constraints) {
    if (c.constant != 0 || c.rel == Relation::StrictlyGreater)
      throw Error(ErrorKind::HypothesisViolated, "the Hilbert basis needs a homogeneous system");
    Constraint e = c;
    if (c.rel == Relation::GreaterEqual) {
      std::string s = fresh_name("slack" + std::to_string(slacks.size()), lifted.variables);
      lifted.variables.push_back(s);
      slacks.push_back(s);
      e.coeffs[s] = -1;
      e.rel = Relation::Equal;
    }
    lifted.constraints.push_back(std::move(e));
  }
  // Minimality is decided in the lifted coordinates; the projection of a
  // lifted antichain need not be one.
  SolutionBasis out;
  for (const auto& x : gordan_minimal_system(lifted, parameter_limit)) {
    ExponentVector p = x;
    for (const auto& s : slacks) p.set(s, 0);
    if (!p.empty()) out.minimal.push_back(p);
  }
  std::sort(out.minimal.begin(), out.minimal.end(), CanonicalLess{});
  out.minimal.erase(std::unique(out.minimal.begin(), out.minimal.end()), out.minimal.end());
  return out;
}

}  // namespace ldsolve
