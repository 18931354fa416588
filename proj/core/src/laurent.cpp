#include <algorithm>
#include <iterator>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "ldsolve/polyring.hpp"

namespace ldsolve {

namespace {

using TermList = std::vector<std::pair<ExponentVector, Rational>>;

// Sum of two lists sorted by LexLess, in one pass.
TermList merged(TermList&& a, TermList&& b) {
  TermList out;
  out.reserve(a.size() + b.size());
  LexLess less;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (less(i->first, j->first)) {
      out.push_back(std::move(*i++));
    } else if (less(j->first, i->first)) {
      out.push_back(std::move(*j++));
    } else {
      i->second += j->second;
      if (i->second != 0) out.push_back(std::move(*i));
      ++i;
      ++j;
    }
  }
  std::move(i, a.end(), std::back_inserter(out));
  std::move(j, b.end(), std::back_inserter(out));
  return out;
}

// Shifting by a monomial preserves LexLess, so each row stays sorted.
TermList shifted_row(const LaurentPolynomial::Terms& p, const ExponentVector& m, const Rational& c) {
  TermList row;
  row.reserve(p.size());
  for (const auto& [e, x] : p) row.emplace_back(e + m, x * c);
  return row;
}

TermList merge_all(std::vector<TermList> rows) {
  if (rows.empty()) return {};
  while (rows.size() > 1) {
    std::vector<TermList> next;
    next.reserve(rows.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merged(std::move(rows[i]), std::move(rows[i + 1])));
    if (rows.size() % 2) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  return std::move(rows.front());
}

}  // namespace

LaurentPolynomial LaurentPolynomial::from_sorted(std::vector<std::pair<ExponentVector, Rational>>&& terms) {
  LaurentPolynomial r;
  for (auto& [m, c] : terms)
    if (c != 0) r.terms_.emplace_hint(r.terms_.end(), std::move(m), std::move(c));
  return r;
}

LaurentPolynomial::LaurentPolynomial(const Rational& c) {
  if (c != 0) terms_.emplace(ExponentVector{}, c);
}

LaurentPolynomial::LaurentPolynomial(const ExponentVector& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

bool LaurentPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational LaurentPolynomial::constant_term() const { return coefficient(ExponentVector{}); }

Rational LaurentPolynomial::coefficient(const ExponentVector& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::add_term(const ExponentVector& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPolynomial::accumulate(const LaurentPolynomial& o, const Rational& sign) {
  if (&o == this) {
    *this *= sign + 1;
    return;
  }
  // Few terms go in one by one; otherwise a linear merge is cheaper.
  if (o.size() * 8 < size()) {
    for (const auto& [m, c] : o.terms_) add_term(m, c * sign);
    return;
  }
  TermList mine(std::make_move_iterator(terms_.begin()), std::make_move_iterator(terms_.end()));
  *this = from_sorted(merged(std::move(mine), shifted_row(o.terms_, ExponentVector{}, sign)));
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  accumulate(o, 1);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  accumulate(o, -1);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return LaurentPolynomial{};
  const LaurentPolynomial& small = a.size() <= b.size() ? a : b;
  const LaurentPolynomial& large = a.size() <= b.size() ? b : a;
  std::vector<TermList> rows;
  rows.reserve(small.size());
  for (const auto& [m, c] : small.terms_) rows.push_back(shifted_row(large.terms_, m, c));
  return LaurentPolynomial::from_sorted(merge_all(std::move(rows)));
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) {
  *this = *this * o;
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, x] : terms_) x *= c;
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& [_, x] : r.terms_) x = -x;
  return r;
}

LaurentPolynomial LaurentPolynomial::shifted(const ExponentVector& m) const {
  if (m.empty()) return *this;
  LaurentPolynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + m, c);
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned k) const {
  LaurentPolynomial result(1);
  LaurentPolynomial base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

VarSet LaurentPolynomial::variables() const {
  VarSet vs;
  for (const auto& [m, _] : terms_)
    for (const auto& [n, e] : m.entries()) vs.insert(n);
  return vs;
}

long LaurentPolynomial::max_exponent(std::string_view v) const {
  if (terms_.empty()) return 0;
  long best = std::numeric_limits<long>::min();
  for (const auto& [m, _] : terms_) best = std::max(best, m.get(v));
  return best;
}

long LaurentPolynomial::min_exponent(std::string_view v) const {
  if (terms_.empty()) return 0;
  long best = std::numeric_limits<long>::max();
  for (const auto& [m, _] : terms_) best = std::min(best, m.get(v));
  return best;
}

bool LaurentPolynomial::has_negative_exponent_in(const VarSet& vars) const {
  for (const auto& [m, _] : terms_)
    for (const auto& [n, e] : m.entries())
      if (e < 0 && vars.count(n)) return true;
  return false;
}

LaurentPolynomial LaurentPolynomial::evaluated(std::string_view v, const Rational& value) const {
  LaurentPolynomial r;
  for (const auto& [m, c] : terms_) {
    long e = m.get(v);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    if (value == 0) {
      if (e < 0) throw Error(ErrorKind::PoleAtZero, "negative exponent of " + std::string(v));
      continue;
    }
    Rational f = 1;
    Rational b = e > 0 ? value : Rational(1 / value);
    for (long i = 0; i < std::labs(e); ++i) f *= b;
    r.add_term(m.without(v), c * f);
  }
  return r;
}

std::map<long, LaurentPolynomial> LaurentPolynomial::slices(std::string_view v) const {
  std::map<long, LaurentPolynomial> out;
  for (const auto& [m, c] : terms_) out[m.get(v)].add_term(m.without(v), c);
  return out;
}

LaurentPolynomial LaurentPolynomial::truncated(const VarSet& vars, long bound) const {
  LaurentPolynomial r;
  for (const auto& [m, c] : terms_)
    if (m.degree_in(vars) <= bound) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

LaurentPolynomial LaurentPolynomial::mul_truncated(const LaurentPolynomial& a,
                                                   const LaurentPolynomial& b, const VarSet& vars,
                                                   long bound) {
  LaurentPolynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<std::pair<long, const std::pair<const ExponentVector, Rational>*>> bs;
  bs.reserve(b.size());
  for (const auto& t : b.terms_) bs.emplace_back(t.first.degree_in(vars), &t);
  for (const auto& [ma, ca] : a.terms_) {
    long da = ma.degree_in(vars);
    for (const auto& [db, t] : bs)
      if (da + db <= bound) r.add_term(ma + t->first, ca * t->second);
  }
  return r;
}

// Division by lo + hi with hi = lo * step, step > 0 in LexLess. Writing the
// quotient's terms in ascending order, each one is fixed by a single earlier
// term, so one pass suffices and any leftover residue rejects the input.
std::optional<LaurentPolynomial> LaurentPolynomial::divide_two_term(const LaurentPolynomial& d) const {
  const auto& [ml, cl] = d.trailing();
  const auto& [mh, ch] = d.leading();
  ExponentVector step = mh - ml;
  LaurentPolynomial p = shifted(-ml);
  LexLess less;
  ExponentVector last = p.leading().first - step;  // largest possible quotient term
  // Lex order alone does not bound the quotient; per-variable windows do.
  std::map<Symbol, std::pair<long, long>> window;
  for (const auto& [m, _] : p.terms_)
    for (const auto& [v, e] : m.entries()) window.try_emplace(v, 0, 0);
  for (const auto& [v, e] : step.entries()) window.try_emplace(v, 0, 0);
  for (auto& [v, w] : window) {
    long lo = 0;
    long hi = 0;
    bool first = true;
    for (const auto& [m, _] : p.terms_) {
      long e = m.get(v.str());
      lo = first ? e : std::min(lo, e);
      hi = first ? e : std::max(hi, e);
      first = false;
    }
    long s = step.get(v.str());
    w = {lo - std::min(0L, s), hi - std::max(0L, s)};
    if (w.first > w.second) return std::nullopt;
  }
  auto inside = [&](const ExponentVector& m) {
    for (const auto& [v, e] : m.entries()) {
      auto it = window.find(v);
      if (it == window.end() || e < it->second.first || e > it->second.second) return false;
    }
    for (const auto& [v, w] : window)
      if (!m.contains(v.str()) && (w.first > 0 || w.second < 0)) return false;
    return true;
  };
  Rational inv = 1 / cl;
  TermList q;
  std::size_t k = 0;  // next quotient term whose multiple by step is still pending
  auto it = p.terms_.begin();
  while (true) {
    // Candidate monomial: the smaller of the next dividend term and next q*step term.
    bool from_p = it != p.terms_.end();
    bool from_q = k < q.size();
    if (!from_p && !from_q) break;
    ExponentVector t;
    if (from_q) {
      ExponentVector qt = q[k].first + step;
      if (!from_p || less(qt, it->first))
        t = std::move(qt);
      else
        t = it->first;
    } else {
      t = it->first;
    }
    Rational c = 0;
    if (it != p.terms_.end() && it->first == t) c = (it++)->second;
    if (k < q.size() && q[k].first + step == t) c -= ch * q[k++].second;
    if (c == 0) continue;
    // Past the last quotient slot every residue must vanish.
    if (less(last, t) || !inside(t)) return std::nullopt;
    q.emplace_back(std::move(t), c * inv);
  }
  return from_sorted(std::move(q));
}

std::optional<LaurentPolynomial> LaurentPolynomial::exact_div(const LaurentPolynomial& d) const {
  if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (is_zero()) return LaurentPolynomial{};
  if (d.is_monomial()) {
    const auto& [m, c] = d.leading();
    LaurentPolynomial q = shifted(-m);
    q *= Rational(1 / c);
    return q;
  }
  if (d.size() == 2) return divide_two_term(d);
  // Per-variable exponent window the quotient must live in.
  VarSet vars = variables();
  for (const auto& v : d.variables()) vars.insert(v);
  std::vector<std::pair<std::string, std::pair<long, long>>> window;
  for (const auto& v : vars) {
    long lo = min_exponent(v) - d.min_exponent(v);
    long hi = max_exponent(v) - d.max_exponent(v);
    if (lo > hi) return std::nullopt;
    window.push_back({v, {lo, hi}});
  }
  auto inside = [&](const ExponentVector& m) {
    for (const auto& [v, w] : window) {
      long e = m.get(v);
      if (e < w.first || e > w.second) return false;
    }
    return true;
  };

  const auto& [ld, lc] = d.leading();
  Rational inv_lc = 1 / lc;
  LaurentPolynomial q;
  LaurentPolynomial r = *this;
  while (!r.is_zero()) {
    ExponentVector m = r.leading().first - ld;
    if (!inside(m)) return std::nullopt;
    Rational c = r.leading().second * inv_lc;
    q.add_term(m, c);
    for (const auto& [e, dc] : d.terms_) r.add_term(e + m, -c * dc);
  }
  return q;
}

LaurentPolynomial lp_add(const LaurentPolynomial& p, const LaurentPolynomial& q) { return p + q; }
LaurentPolynomial lp_mul(const LaurentPolynomial& p, const LaurentPolynomial& q) { return p * q; }
LaurentPolynomial lp_neg(const LaurentPolynomial& p) { return -p; }

}  // namespace ldsolve
