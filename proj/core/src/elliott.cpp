#include "ldsolve/elliott.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ldsolve {

Purity purity(const ZTerm& term, const std::string& z) {
  bool pos = false;
  bool neg = false;
  for (const auto& [m, _] : term.body.denominator()) {
    long b = m.get(z);
    pos = pos || b > 0;
    neg = neg || b < 0;
  }
  if (pos && neg) return Purity::Mixed;
  return neg ? Purity::Negative : Purity::Positive;
}

bool operator<(const Signature& a, const Signature& b) {
  if (a.positives != b.positives) return a.positives < b.positives;
  return a.negatives < b.negatives;
}

Signature signature(const ZTerm& term, const std::string& z) {
  Signature s;
  for (const auto& [m, k] : term.body.denominator()) {
    long b = m.get(z);
    for (int i = 0; i < k; ++i) {
      if (b > 0) s.positives.push_back(b);
      if (b < 0) s.negatives.push_back(-b);
    }
  }
  std::sort(s.positives.begin(), s.positives.end(), std::greater<>());
  std::sort(s.negatives.begin(), s.negatives.end(), std::greater<>());
  return s;
}

namespace {

Denominator split_den(const Denominator& den, const ExponentVector* drop1, const ExponentVector* drop2,
                      const ExponentVector& add) {
  Denominator out = den;
  for (const ExponentVector* d : {drop1, drop2}) {
    if (!d) continue;
    auto it = out.find(*d);
    if (--it->second == 0) out.erase(it);
  }
  if (add.empty()) throw Error(ErrorKind::DegenerateFactor, "Elliott split produced the factor (1-1)");
  out[add] += 1;
  return out;
}

std::array<ZTerm, 3> split_pair(const ZTerm& t, const ExponentVector& x, const ExponentVector& y) {
  ExponentVector xy = x + y;
  const Denominator& den = t.body.denominator();
  const LaurentPolynomial& num = t.body.numerator();
  return {ZTerm{t.sign, NiceRational(num, split_den(den, &y, nullptr, xy)), t.zshift},
          ZTerm{t.sign, NiceRational(num, split_den(den, &x, nullptr, xy)), t.zshift},
          ZTerm{-t.sign, NiceRational(num, split_den(den, &x, &y, xy)), t.zshift}};
}

// Largest positive and largest negative z-exponent, first in factor order on ties.
bool choose_pair(const Denominator& den, const std::string& z, ExponentVector& x, ExponentVector& y) {
  long best_a = 0;
  long best_c = 0;
  for (const auto& [m, _] : den) {
    long b = m.get(z);
    if (b > best_a) {
      best_a = b;
      x = m;
    }
    if (-b > best_c) {
      best_c = -b;
      y = m;
    }
  }
  return best_a > 0 && best_c > 0;
}

}  // namespace

std::array<ZTerm, 3> elliott_split(const ZTerm& term, std::size_t i, std::size_t m, const std::string& z) {
  auto fs = term.body.factors();
  if (i >= fs.size() || m >= fs.size() || fs[i].monomial.get(z) <= 0 || fs[m].monomial.get(z) >= 0)
    throw Error(ErrorKind::NotMixed, "split needs a positive and a negative z-exponent factor");
  return split_pair(term, fs[i].monomial, fs[m].monomial);
}

std::vector<ZTerm> elliott_decompose(const ZTerm& term, const std::string& z, StepBudget* budget) {
  std::vector<ZTerm> out;
  std::vector<ZTerm> stack{term};
  while (!stack.empty()) {
    ZTerm t = std::move(stack.back());
    stack.pop_back();
    ExponentVector x, y;
    if (t.body.is_zero() || !choose_pair(t.body.denominator(), z, x, y)) {
      if (!t.body.is_zero()) out.push_back(std::move(t));
      continue;
    }
    if (budget) budget->tick();
    auto parts = split_pair(t, x, y);
    // Depth first, in the order T1, T2, T3.
    for (int k = 2; k >= 0; --k) stack.push_back(std::move(parts[static_cast<std::size_t>(k)]));
  }
  return out;
}

std::vector<ZTerm> elliott_expand(const NiceRational& f, const std::string& z, StepBudget* budget) {
  std::vector<ZTerm> out;
  if (f.is_zero()) return out;
  // Decompose the denominator once, then attach each z-slice of the numerator.
  std::vector<ZTerm> leaves =
      elliott_decompose(ZTerm{1, NiceRational(LaurentPolynomial(1), f.denominator()), 0}, z, budget);
  for (const auto& [d, slice] : f.numerator().slices(z))
    for (const auto& leaf : leaves)
      out.push_back(ZTerm{leaf.sign, NiceRational(slice, leaf.body.denominator()), d});
  return out;
}

NiceRational zterm_sum(const std::vector<ZTerm>& terms, const std::string& z) {
  std::vector<NiceRational> parts;
  for (const auto& t : terms) {
    NiceRational v = nr_shift(t.body, ExponentVector::var(z, t.zshift));
    parts.push_back(t.sign < 0 ? nr_neg(v) : v);
  }
  return normalize(nr_sum(parts));
}

namespace {

void require_pure(const ZTerm& t, const std::string& z) {
  if (purity(t, z) == Purity::Mixed)
    throw Error(ErrorKind::ImpureInput, "term mixes positive and negative powers of " + z);
  if (t.body.numerator().variables().count(z))
    throw Error(ErrorKind::ImpureInput, "term numerator depends on " + z);
}

ExponentVector flip_z(const ExponentVector& m, const std::string& z) {
  ExponentVector out = m;
  out.set(z, -m.get(z));
  return out;
}

LaurentPolynomial flip_z(const LaurentPolynomial& p, const std::string& z) {
  LaurentPolynomial out;
  for (const auto& [m, c] : p.terms()) out.add_term(flip_z(m, z), c);
  return out;
}

// Terms sharing a denominator, summed into one numerator that carries z.
// Negative groups are stored in w = 1/z (under the same name), so every
// group's z-factors have positive exponent. `flipped` records that.
struct Group {
  LaurentPolynomial num;
  Denominator z_factors;
  Denominator z_free;
  bool flipped = false;
};

std::vector<Group> group_terms(const std::vector<ZTerm>& terms, const std::string& z) {
  std::map<Denominator, Group, DenominatorLess> groups;
  for (const auto& t : terms) {
    require_pure(t, z);
    LaurentPolynomial n = t.body.numerator().shifted(ExponentVector::var(z, t.zshift));
    if (t.sign < 0) n = -n;
    Group& g = groups[t.body.denominator()];
    g.num += n;
    g.flipped = purity(t, z) == Purity::Negative;
  }
  std::vector<Group> out;
  for (auto& [den, g] : groups) {
    if (g.num.is_zero()) continue;
    for (const auto& [m, k] : den) {
      if (m.get(z) == 0)
        g.z_free[m] += k;
      else
        g.z_factors[g.flipped ? flip_z(m, z) : m] += k;
    }
    if (g.flipped) g.num = flip_z(g.num, z);
    out.push_back(std::move(g));
  }
  return out;
}

// Coefficients of z^0..z^K in 1 / prod (1 - M z^b), all b > 0; each is a polynomial.
std::vector<LaurentPolynomial> geometric_coefficients(const Denominator& z_factors, const std::string& z, long K) {
  std::vector<LaurentPolynomial> g(static_cast<std::size_t>(std::max(K, 0L)) + 1);
  g[0] = LaurentPolynomial(1);
  for (const auto& [m, k] : z_factors) {
    long b = m.get(z);
    LaurentPolynomial step(m.without(z), 1);
    for (int rep = 0; rep < k; ++rep)
      for (long n = b; n <= K; ++n) g[static_cast<std::size_t>(n)] += step * g[static_cast<std::size_t>(n - b)];
  }
  return g;
}

// Constant term of num / prod(1 - M z^b) over the z-free factors.
LaurentPolynomial constant_numerator(const Group& grp, const std::string& z) {
  auto slices = grp.num.slices(z);
  long deepest = slices.empty() ? 0 : -slices.begin()->first;
  auto g = geometric_coefficients(grp.z_factors, z, deepest);
  LaurentPolynomial out;
  for (const auto& [d, slice] : slices) {
    if (d > 0) break;
    out += slice * g[static_cast<std::size_t>(-d)];
  }
  return out;
}

}  // namespace

std::vector<NiceRational> constant_term_parts(const std::vector<ZTerm>& terms, const std::string& z) {
  std::vector<NiceRational> parts;
  for (const auto& grp : group_terms(terms, z)) parts.emplace_back(constant_numerator(grp, z), grp.z_free);
  return parts;
}

NiceRational constant_term_z(const std::vector<ZTerm>& terms, const std::string& z) {
  return sum_reduced(constant_term_parts(terms, z));
}

NiceRational nonneg_part_z(const std::vector<ZTerm>& terms, const std::string& z, bool retain_z) {
  return sum_reduced(nonneg_parts(terms, z, retain_z));
}

std::vector<NiceRational> nonneg_parts(const std::vector<ZTerm>& terms, const std::string& z, bool retain_z) {
  std::vector<NiceRational> parts;
  for (const auto& grp : group_terms(terms, z)) {
    auto slices = grp.num.slices(z);
    NiceRational part;
    if (!grp.flipped) {
      // Everything except the finitely many negative powers: subtract them.
      long deepest = slices.empty() ? 0 : -slices.begin()->first;
      auto g = geometric_coefficients(grp.z_factors, z, deepest - 1);
      LaurentPolynomial negative;
      for (const auto& [d, slice] : slices) {
        if (d >= 0) break;
        for (long n = 0; n + d < 0; ++n)
          negative += (slice * g[static_cast<std::size_t>(n)]).shifted(ExponentVector::var(z, d + n));
      }
      if (!negative.is_zero()) negative *= NiceRational(LaurentPolynomial(1), grp.z_factors).expanded_denominator();
      Denominator den = grp.z_free;
      for (const auto& [m, k] : grp.z_factors) den[m] += k;
      part = NiceRational(grp.num - negative, std::move(den));
    } else {
      // In w = 1/z only the w-powers <= 0 survive, a polynomial.
      long top = slices.empty() ? 0 : -slices.begin()->first;
      auto g = geometric_coefficients(grp.z_factors, z, top);
      LaurentPolynomial kept;
      for (const auto& [e, slice] : slices) {
        if (e > 0) break;
        for (long n = 0; e + n <= 0; ++n)
          kept += (slice * g[static_cast<std::size_t>(n)]).shifted(ExponentVector::var(z, e + n));
      }
      part = NiceRational(flip_z(kept, z), grp.z_free);
    }
    parts.push_back(retain_z ? std::move(part) : eval_at(part, z, 1));
  }
  return parts;
}

}  // namespace ldsolve
