#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "ldsolve/polyring.hpp"

namespace ldsolve {

namespace {

LaurentPolynomial binomial(const ExponentVector& m) {
  LaurentPolynomial p(1);
  p.add_term(m, -1);
  return p;
}

// prod (1 - M)^k over the given factors.
LaurentPolynomial expand(const Denominator& den) {
  LaurentPolynomial p(1);
  for (const auto& [m, k] : den)
    for (int i = 0; i < k; ++i) p *= binomial(m);
  return p;
}

// Factors of `outer` not covered by `inner` (multiset difference).
Denominator complement(const Denominator& outer, const Denominator& inner) {
  Denominator rest;
  for (const auto& [m, k] : outer) {
    auto it = inner.find(m);
    int have = it == inner.end() ? 0 : it->second;
    if (k > have) rest[m] = k - have;
  }
  return rest;
}

}  // namespace

bool DenominatorLess::operator()(const Denominator& a, const Denominator& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return LexLess{}(x.first, y.first);
    return x.second < y.second;
  });
}

// ---------------------------------------------------------------- NiceRational

NiceRational::NiceRational(LaurentPolynomial numerator, const std::vector<BinomialFactor>& factors)
    : num_(std::move(numerator)) {
  for (const auto& f : factors) {
    if (f.multiplicity <= 0) throw std::invalid_argument("factor multiplicity must be positive");
    den_[f.monomial] += f.multiplicity;
  }
  check();
}

NiceRational::NiceRational(LaurentPolynomial numerator, Denominator den)
    : num_(std::move(numerator)), den_(std::move(den)) {
  check();
}

void NiceRational::check() {
  for (auto it = den_.begin(); it != den_.end();) {
    if (it->first.empty())
      throw Error(ErrorKind::DegenerateFactor, "denominator factor (1-1) vanishes identically");
    if (it->second < 0) throw std::invalid_argument("negative factor multiplicity");
    if (it->second == 0)
      it = den_.erase(it);
    else
      ++it;
  }
  if (num_.is_zero()) den_.clear();
}

NiceRational NiceRational::free_monoid(const std::vector<std::string>& vars) {
  Denominator den;
  for (const auto& v : vars) den[ExponentVector::var(v)] += 1;
  return NiceRational(LaurentPolynomial(1), std::move(den));
}

std::vector<BinomialFactor> NiceRational::factors() const {
  std::vector<BinomialFactor> out;
  out.reserve(den_.size());
  for (const auto& [m, k] : den_) out.push_back({m, k});
  return out;
}

VarSet NiceRational::variables() const {
  VarSet vs = num_.variables();
  for (const auto& [m, _] : den_)
    for (const auto& [n, e] : m.entries()) vs.insert(n);
  return vs;
}

void NiceRational::multiply_factor(const ExponentVector& m, int k) {
  if (m.empty()) throw Error(ErrorKind::DegenerateFactor, "factor (1-1)");
  if (num_.is_zero()) return;
  den_[m] += k;
  if (den_[m] == 0) den_.erase(m);
  if (den_.count(m) && den_[m] < 0) throw std::invalid_argument("negative factor multiplicity");
}

LaurentPolynomial NiceRational::expanded_denominator() const { return expand(den_); }

// ------------------------------------------------------------- GeneralRational

GeneralRational::GeneralRational(LaurentPolynomial num, LaurentPolynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPolynomial(1);
    return;
  }
  Rational lc = den_.leading().second;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

GeneralRational::GeneralRational(const NiceRational& f)
    : GeneralRational(f.numerator(), f.expanded_denominator()) {}

GeneralRational operator+(const GeneralRational& a, const GeneralRational& b) {
  if (a.den_ == b.den_) return GeneralRational(a.num_ + b.num_, a.den_);
  return GeneralRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

GeneralRational operator-(const GeneralRational& a, const GeneralRational& b) {
  if (a.den_ == b.den_) return GeneralRational(a.num_ - b.num_, a.den_);
  return GeneralRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

GeneralRational operator*(const GeneralRational& a, const GeneralRational& b) {
  return GeneralRational(a.num_ * b.num_, a.den_ * b.den_);
}

// ---------------------------------------------------------------- substitution

ExponentVector substitute_monomial(const ExponentVector& m, const Substitution& sigma) {
  ExponentVector out;
  for (const auto& [n, e] : m.entries()) {
    auto it = sigma.find(n);
    if (it == sigma.end())
      out = out + ExponentVector::var(n, e);
    else
      out = out + it->second.scaled(e);
  }
  return out;
}

LaurentPolynomial substitute_monomial(const LaurentPolynomial& p, const Substitution& sigma) {
  LaurentPolynomial out;
  for (const auto& [m, c] : p.terms()) out.add_term(substitute_monomial(m, sigma), c);
  return out;
}

NiceRational substitute_monomial(const NiceRational& f, const Substitution& sigma) {
  Denominator den;
  for (const auto& [m, k] : f.denominator()) {
    ExponentVector s = substitute_monomial(m, sigma);
    if (s.empty())
      throw Error(ErrorKind::DegenerateFactor,
                  "factor (1-" + render(m) + ") becomes (1-1) under the substitution");
    den[s] += k;
  }
  return NiceRational(substitute_monomial(f.numerator(), sigma), std::move(den));
}

// ------------------------------------------------------------------- expansion

LaurentPolynomial expand_truncated(const NiceRational& f, const VarSet& vars, long bound) {
  if (f.numerator().has_negative_exponent_in(vars))
    throw Error(ErrorKind::NonExpandable, "numerator has negative exponents in the expansion variables");
  for (const auto& [m, _] : f.denominator())
    if (m.degree_in(vars) <= 0)
      throw Error(ErrorKind::NonExpandable,
                  "factor (1-" + render(m) + ") has nonpositive degree in the expansion variables");
  if (bound < 0 || f.is_zero()) return LaurentPolynomial{};

  // Dense exponent keys bucketed by degree in `vars`; dividing by (1 - M)
  // is the recurrence g[x] = f[x] + g[x - M], swept in increasing degree.
  std::vector<std::string> names;
  for (const auto& v : f.variables()) names.push_back(v);
  auto index = [&](const std::string& n) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
  };
  using Key = std::vector<long>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (long e : k) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ULL;
      return h;
    }
  };
  auto to_key = [&](const ExponentVector& m) {
    Key k(names.size(), 0);
    for (const auto& [n, e] : m.entries()) k[index(n)] = e;
    return k;
  };
  std::vector<std::unordered_map<Key, Rational, KeyHash>> buckets(static_cast<std::size_t>(bound) + 1);
  for (const auto& [m, c] : f.numerator().terms()) {
    long d = m.degree_in(vars);
    if (d <= bound) buckets[static_cast<std::size_t>(d)][to_key(m)] += c;
  }
  for (const auto& [m, k] : f.denominator()) {
    long e = m.degree_in(vars);
    Key step = to_key(m);
    for (int rep = 0; rep < k; ++rep) {
      for (long d = 0; d + e <= bound; ++d) {
        auto& target = buckets[static_cast<std::size_t>(d + e)];
        for (const auto& [x, c] : buckets[static_cast<std::size_t>(d)]) {
          if (c == 0) continue;
          Key y = x;
          for (std::size_t i = 0; i < y.size(); ++i) y[i] += step[i];
          target[y] += c;
        }
      }
    }
  }
  LaurentPolynomial out;
  for (const auto& bucket : buckets) {
    for (const auto& [x, c] : bucket) {
      if (c == 0) continue;
      ExponentVector m;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) m.set(names[i], x[i]);
      out.add_term(m, c);
    }
  }
  return out;
}

// ---------------------------------------------------------- coefficient_of

GeneralRational coefficient_of(const GeneralRational& f, const std::string& v, long d) {
  if (d < 0) throw std::invalid_argument("coefficient_of: negative degree");
  LaurentPolynomial num = f.numerator();
  LaurentPolynomial den = f.denominator();
  if (num.is_zero()) return GeneralRational{};
  long low = std::min(num.min_exponent(v), den.min_exponent(v));
  ExponentVector shift = ExponentVector::var(v, -low);
  num = num.shifted(shift);
  den = den.shifted(shift);
  LaurentPolynomial den0 = den.evaluated(v, 0);
  while (den0.is_zero()) {
    if (!num.evaluated(v, 0).is_zero())
      throw Error(ErrorKind::PoleAtZero, "denominator vanishes at " + v + "=0");
    num = num.shifted(ExponentVector::var(v, -1));
    den = den.shifted(ExponentVector::var(v, -1));
    den0 = den.evaluated(v, 0);
  }
  // f_j = N_j / (den * den0^j); N_{j+1} = (N_j*den0 - N_j(0)*den) / v.
  ExponentVector inv_v = ExponentVector::var(v, -1);
  for (long j = 0; j < d; ++j) {
    LaurentPolynomial n0 = num.evaluated(v, 0);
    num = (num * den0 - n0 * den).shifted(inv_v);
  }
  LaurentPolynomial top = num.evaluated(v, 0);
  return GeneralRational(top, den0.pow(static_cast<unsigned>(d + 1)));
}

NiceRational coefficient_of(const NiceRational& f, const std::string& v, long d) {
  if (d < 0) throw std::invalid_argument("coefficient_of: negative degree");
  if (f.is_zero()) return NiceRational{};
  LaurentPolynomial num = f.numerator();
  Denominator with_v;
  Denominator free;
  for (const auto& [m, k] : f.denominator()) {
    long e = m.get(v);
    if (e == 0) {
      free[m] += k;
    } else if (e > 0) {
      with_v[m] += k;
    } else {
      // 1/(1 - M) with negative v-exponent equals -M^-1 / (1 - M^-1).
      for (int i = 0; i < k; ++i) num = -num.shifted(-m);
      with_v[-m] += k;
    }
  }
  if (num.min_exponent(v) < 0)
    throw Error(ErrorKind::PoleAtZero, "numerator has a negative power of " + v);
  VarSet only{v};
  LaurentPolynomial series = expand_truncated(NiceRational(num, with_v), only, d);
  LaurentPolynomial slice;
  for (const auto& [m, c] : series.terms())
    if (m.get(v) == d) slice.add_term(m.without(v), c);
  return normalize(NiceRational(std::move(slice), std::move(free)));
}

// ------------------------------------------------------------------- eval_at

NiceRational eval_at(const NiceRational& f, const std::string& v, int value) {
  if (value != 0 && value != 1) throw std::invalid_argument("eval_at supports the values 0 and 1");
  if (f.is_zero()) return NiceRational{};
  Denominator den;
  if (value == 1) {
    for (const auto& [m, k] : f.denominator()) {
      ExponentVector r = m.without(v);
      if (r.empty())
        throw Error(ErrorKind::PoleAtOne, "factor (1-" + render(m) + ") vanishes at " + v + "=1");
      den[r] += k;
    }
    return NiceRational(f.numerator().evaluated(v, 1), std::move(den));
  }
  for (const auto& [m, k] : f.denominator()) {
    long e = m.get(v);
    if (e < 0) throw Error(ErrorKind::PoleAtZero, "factor (1-" + render(m) + ") has a pole at " + v + "=0");
    if (e == 0) den[m] += k;
  }
  if (f.numerator().min_exponent(v) < 0)
    throw Error(ErrorKind::PoleAtZero, "numerator has a negative power of " + v);
  return NiceRational(f.numerator().evaluated(v, 0), std::move(den));
}

// ------------------------------------------------------------------ equality

bool rf_equal(const NiceRational& f, const NiceRational& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  Denominator only_f = complement(f.denominator(), g.denominator());
  Denominator only_g = complement(g.denominator(), f.denominator());
  return f.numerator() * expand(only_g) == g.numerator() * expand(only_f);
}

bool rf_equal(const GeneralRational& f, const GeneralRational& g) {
  return f.numerator() * g.denominator() == g.numerator() * f.denominator();
}

bool rf_equal(const NiceRational& f, const GeneralRational& g) {
  return f.numerator() * g.denominator() == g.numerator() * f.expanded_denominator();
}

// ----------------------------------------------------------------- normalize

NiceRational normalize(const NiceRational& f) {
  if (f.is_zero()) return NiceRational{};
  LaurentPolynomial num = f.numerator();
  Denominator den;
  for (const auto& [m, k] : f.denominator()) {
    int keep = k;
    LaurentPolynomial b = binomial(m);
    while (keep > 0) {
      auto q = num.exact_div(b);
      if (!q) break;
      num = std::move(*q);
      --keep;
    }
    if (keep > 0) den[m] = keep;
  }
  return NiceRational(std::move(num), std::move(den));
}

NiceRational reduce_factors(const NiceRational& f) {
  if (f.is_zero()) return NiceRational{};
  LaurentPolynomial num = f.numerator();
  std::vector<std::pair<ExponentVector, int>> work(f.denominator().begin(), f.denominator().end());
  Denominator den;
  while (!work.empty()) {
    auto [m, k] = work.back();
    work.pop_back();
    long g = 0;
    for (const auto& [_, e] : m.entries()) g = std::gcd(g, std::labs(e));
    bool reduced = false;
    // Try the largest proper split first: (1 - R^g) = (1 - R^(g/s)) * (1 + ... )
    for (long s = g; s > 1 && !reduced; --s) {
      if (g % s) continue;
      ExponentVector step;
      for (const auto& [n, e] : m.entries()) step.set(n, e / s);
      LaurentPolynomial cyclo;
      for (long j = 0; j < s; ++j) cyclo.add_term(step.scaled(j), 1);
      if (auto q = num.exact_div(cyclo)) {
        num = std::move(*q);
        work.emplace_back(step, 1);
        if (k > 1) work.emplace_back(m, k - 1);
        reduced = true;
      }
    }
    if (!reduced) den[m] += k;
  }
  return normalize(NiceRational(std::move(num), std::move(den)));
}

// ---------------------------------------------------------------- arithmetic

NiceRational nr_mul(const NiceRational& f, const NiceRational& g) {
  if (f.is_zero() || g.is_zero()) return NiceRational{};
  Denominator den = f.denominator();
  for (const auto& [m, k] : g.denominator()) den[m] += k;
  return NiceRational(f.numerator() * g.numerator(), std::move(den));
}

NiceRational nr_neg(const NiceRational& f) { return NiceRational(-f.numerator(), f.denominator()); }

NiceRational nr_shift(const NiceRational& f, const ExponentVector& m) {
  return NiceRational(f.numerator().shifted(m), f.denominator());
}

NiceRational nr_sum(const std::vector<NiceRational>& terms) {
  std::map<Denominator, LaurentPolynomial, DenominatorLess> groups;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    groups[t.denominator()] += t.numerator();
  }
  Denominator common;
  for (const auto& [den, num] : groups) {
    if (num.is_zero()) continue;
    for (const auto& [m, k] : den) common[m] = std::max(common[m], k);
  }
  LaurentPolynomial total;
  for (const auto& [den, num] : groups) {
    if (num.is_zero()) continue;
    total += num * expand(complement(common, den));
  }
  if (total.is_zero()) return NiceRational{};
  return NiceRational(std::move(total), std::move(common));
}

// Sums the parts into one fraction without forming the common denominator of
// everything at once. A factor that is not a pole of the total cancels as soon
// as every part carrying it has been added up, so parts are merged one shared
// factor at a time, cheapest first.
NiceRational sum_reduced(std::vector<NiceRational> parts) {
  {
    std::map<Denominator, LaurentPolynomial, DenominatorLess> acc;
    for (const auto& p : parts)
      if (!p.is_zero()) acc[p.denominator()] += p.numerator();
    parts.clear();
    for (auto& [den, num] : acc)
      if (!num.is_zero()) parts.push_back(normalize(NiceRational(std::move(num), den)));
  }
  while (parts.size() > 1) {
    std::map<ExponentVector, std::vector<std::size_t>, LexLess> carriers;
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (const auto& [m, _] : parts[i].denominator()) carriers[m].push_back(i);
    const std::vector<std::size_t>* best = nullptr;
    std::size_t best_cost = 0;
    for (const auto& [m, idx] : carriers) {
      if (idx.size() < 2) continue;
      Denominator common;
      for (std::size_t i : idx)
        for (const auto& [f, k] : parts[i].denominator()) common[f] = std::max(common[f], k);
      std::size_t cost = 0;
      for (const auto& [f, k] : common) cost += static_cast<std::size_t>(k);
      if (!best || cost < best_cost) {
        best = &idx;
        best_cost = cost;
      }
    }
    std::vector<std::size_t> pick = best ? *best : std::vector<std::size_t>{0, 1};
    std::vector<NiceRational> group;
    std::vector<NiceRational> rest;
    for (std::size_t i = 0, j = 0; i < parts.size(); ++i) {
      if (j < pick.size() && pick[j] == i) {
        group.push_back(std::move(parts[i]));
        ++j;
      } else {
        rest.push_back(std::move(parts[i]));
      }
    }
    NiceRational merged = normalize(nr_sum(group));
    if (!merged.is_zero()) rest.push_back(std::move(merged));
    parts = std::move(rest);
  }
  return parts.empty() ? NiceRational{} : parts.front();
}

NiceRational nr_add(const NiceRational& f, const NiceRational& g) { return nr_sum({f, g}); }

NiceRational nr_sub(const NiceRational& f, const NiceRational& g) { return nr_sum({f, nr_neg(g)}); }

}  // namespace ldsolve
