#include "ldsolve/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "json.hpp"

namespace ldsolve {

namespace {

long row_value(const Constraint& c, const ExponentVector& p) {
  long v = c.constant;
  for (const auto& [name, a] : c.coeffs) v += a * p.get(name);
  return v;
}

bool row_holds(const Constraint& c, long v) {
  switch (c.rel) {
    case Relation::Equal: return v == 0;
    case Relation::GreaterEqual: return v >= 0;
    case Relation::StrictlyGreater: return v > 0;
  }
  return false;
}

void each_point(const std::vector<std::string>& vars, std::size_t i, long cap, bool ball, ExponentVector& cur,
                const std::function<void(const ExponentVector&)>& visit) {
  if (i == vars.size()) {
    visit(cur);
    return;
  }
  for (long k = 0; k <= cap; ++k) {
    cur.set(vars[i], k);
    each_point(vars, i + 1, ball ? cap - k : cap, ball, cur, visit);
  }
  cur.set(vars[i], 0);
}

std::vector<ExponentVector> enumerate(const ConstraintSystem& sys, long cap, bool ball) {
  std::vector<ExponentVector> out;
  if (cap < 0) return out;
  ExponentVector cur;
  each_point(sys.variables, 0, cap, ball, cur, [&](const ExponentVector& p) {
    if (satisfies(sys, p)) out.push_back(p);
  });
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

}  // namespace

bool satisfies(const ConstraintSystem& sys, const ExponentVector& point) {
  return std::all_of(sys.constraints.begin(), sys.constraints.end(),
                     [&](const Constraint& c) { return row_holds(c, row_value(c, point)); });
}

std::vector<ExponentVector> brute_solutions(const ConstraintSystem& sys, long B) { return enumerate(sys, B, false); }

std::vector<ExponentVector> ball_solutions(const ConstraintSystem& sys, long D) { return enumerate(sys, D, true); }

EnumerationReport check_series(const NiceRational& chi, const ConstraintSystem& sys, long D) {
  EnumerationReport r;
  r.bound = D;
  r.solutions = ball_solutions(sys, D);
  VarSet tracked(sys.variables.begin(), sys.variables.end());
  LaurentPolynomial e = chi.is_zero() ? LaurentPolynomial() : expand_truncated(chi, tracked, D);
  for (const auto& [m, c] : e.terms()) {
    bool sol = m.restricted(tracked) == m && m.is_nonnegative() && satisfies(sys, m);
    if (m.empty()) sol = satisfies(sys, m);
    if (!sol) r.mismatches.push_back({m, false, true, c, "series term is not a solution"});
    else if (c != 1) r.mismatches.push_back({m, true, true, c, "coefficient is not 1"});
  }
  for (const auto& s : r.solutions)
    if (e.coefficient(s) == 0) r.mismatches.push_back({s, true, false, 0, "solution missing from the series"});
  return r;
}

EnumerationReport check_basis(const SolutionBasis& basis, const ConstraintSystem& sys, const BasisCheckOptions& opts) {
  EnumerationReport r;
  r.bound = opts.bound;
  const auto& B = basis.minimal;
  // Slack coordinates of inequality rows join the comparison.
  auto lifted = [&](const ExponentVector& p) {
    ExponentVector out = p;
    for (std::size_t i = 0; i < sys.constraints.size(); ++i)
      if (sys.constraints[i].rel != Relation::Equal)
        out.set("\x01slack" + std::to_string(i), row_value(sys.constraints[i], p));
    return out;
  };
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (B[i].empty() || !satisfies(sys, B[i]))
      r.mismatches.push_back({B[i], false, true, 0, "basis element is not a nonzero solution"});
    for (std::size_t j = 0; j < B.size(); ++j)
      if (i != j && dickson_leq(lifted(B[i]), lifted(B[j])))
        r.mismatches.push_back({B[j], false, true, 0, "basis element dominates another"});
  }
  r.solutions = brute_solutions(sys, opts.bound);
  std::map<ExponentVector, bool, LexLess> memo;
  std::function<bool(const ExponentVector&, int)> decomposable = [&](const ExponentVector& x, int depth) {
    if (x.empty()) return true;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    if (depth <= 0) return false;
    bool ok = false;
    for (const auto& b : B) {
      if (b.empty() || !dickson_leq(b, x)) continue;
      ExponentVector y = x - b;
      if (y.empty() || (satisfies(sys, y) && decomposable(y, depth - 1))) {
        ok = true;
        break;
      }
    }
    memo[x] = ok;
    return ok;
  };
  // Ascending degree keeps every smaller point memoised before it is needed.
  for (const auto& s : r.solutions) {
    if (s.empty()) continue;
    if (!decomposable(s, opts.depth))
      r.mismatches.push_back({s, true, false, 0, "solution is not a sum of basis elements"});
  }
  return r;
}

std::string render_report(const EnumerationReport& r, const std::vector<std::string>& vars) {
  std::string s = "bound: " + std::to_string(r.bound) + "\n";
  s += "solutions: " + std::to_string(r.solutions.size()) + "\n";
  s += "mismatches: " + std::to_string(r.mismatches.size()) + "\n";
  for (const auto& m : r.mismatches) {
    s += "  " + render_tuple(m.point, vars) + " expected=" + (m.expected_in ? "in" : "out") +
         " actual=" + (m.actually_in ? "in" : "out");
    if (m.coefficient != 0) s += " coefficient=" + render_rational(m.coefficient);
    s += " " + m.reason + "\n";
  }
  return s;
}

std::string render_report_json(const EnumerationReport& r, const std::vector<std::string>& vars) {
  nlohmann::ordered_json doc;
  doc["bound"] = r.bound;
  doc["solutions"] = r.solutions.size();
  doc["mismatches"] = nlohmann::ordered_json::array();
  for (const auto& m : r.mismatches) {
    nlohmann::ordered_json row;
    std::vector<long> pt;
    for (const auto& v : vars) pt.push_back(m.point.get(v));
    row["point"] = pt;
    row["expected_in"] = m.expected_in;
    row["actually_in"] = m.actually_in;
    row["coefficient"] = render_rational(m.coefficient);
    row["reason"] = m.reason;
    doc["mismatches"].push_back(row);
  }
  return doc.dump(2);
}

}  // namespace ldsolve
