#include "ldsolve/xin.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "qpoly.hpp"
#include "zpoly.hpp"

namespace ldsolve {

using detail::Localized;
using detail::ZSlices;

const char* to_string(FactorClass c) {
  switch (c) {
    case FactorClass::Contributing: return "Contributing";
    case FactorClass::NonContributing: return "NonContributing";
    case FactorClass::PureZ: return "PureZ";
  }
  return "?";
}

namespace {

LaurentPolynomial monomial_inverse(const LaurentPolynomial& unit) {
  const auto& [m, c] = unit.leading();
  return LaurentPolynomial(-m, 1 / c);
}

// poly == unit * (1 - A z^a) with a > 0 and A free of z.
struct Binomial {
  LaurentPolynomial poly;
  int mult = 1;
  LaurentPolynomial unit;
  ExponentVector A;
  long a = 0;
  ExponentVector ray;  // primitive monomial G z^g with A z^a = (G z^g)^n
  long n = 0;
  bool negative_origin = false;
};

std::optional<Binomial> as_binomial(const LaurentPolynomial& p, const std::string& z) {
  if (p.size() != 2) return std::nullopt;
  const auto& [m1, c1] = p.trailing();
  const auto& [m2, c2] = p.leading();
  Binomial b;
  b.poly = p;
  for (int flip = 0; flip < 2; ++flip) {
    const ExponentVector& x = flip ? m2 : m1;
    const Rational& cx = flip ? c2 : c1;
    const ExponentVector& y = flip ? m1 : m2;
    const Rational& cy = flip ? c1 : c2;
    if (x.empty() && cx == 1 && cy == -1 && y.get(z) > 0) {
      // 1 - M z^b
      b.unit = LaurentPolynomial(1);
      b.A = y.without(z);
      b.a = y.get(z);
    } else if (cx == 1 && cy == -1 && x.size() == 1 && x.get(z) > 0 && y.get(z) == 0) {
      // z^c - C = -C (1 - C^-1 z^c)
      b.unit = LaurentPolynomial(y, -1);
      b.A = -y;
      b.a = x.get(z);
      b.negative_origin = true;
    } else {
      continue;
    }
    long d = b.a;
    for (const auto& [_, e] : b.A.entries()) d = std::gcd(d, std::labs(e));
    b.n = d;
    ExponentVector g;
    for (const auto& [name, e] : b.A.entries()) g.set(name, e / d);
    b.ray = g + ExponentVector::var(z, b.a / d);
    return b;
  }
  return std::nullopt;
}

bool is_z_power(const LaurentPolynomial& p, const std::string& z, long& k) {
  if (!p.is_monomial() || p.leading().second != 1) return false;
  const auto& m = p.leading().first;
  if (m.size() != 1 || m.get(z) <= 0) return false;
  k = m.get(z);
  return true;
}

Binomial require_binomial(const LaurentPolynomial& p, const std::string& z) {
  auto b = as_binomial(p, z);
  if (!b)
    throw Error(ErrorKind::UnclassifiableFactor,
                "factor " + render(p) + " is neither 1-M*z^b nor z^c-M");
  return *b;
}

// 1/poly^k as a NiceRational.
NiceRational reciprocal(const LaurentPolynomial& poly, int k, const std::string& z) {
  long e = 0;
  if (is_z_power(poly, z, e)) return NiceRational(LaurentPolynomial::var(z, -e * k));
  Binomial b = require_binomial(poly, z);
  ExponentVector m = b.A + ExponentVector::var(z, b.a);
  return NiceRational(monomial_inverse(b.unit).pow(static_cast<unsigned>(k)), Denominator{{m, k}});
}

ZSlices slices_of(const LaurentPolynomial& p, const std::string& z) { return detail::to_slices(p, z); }

ZSlices one_slices() { return ZSlices{{0, LaurentPolynomial(1)}}; }

ZSlices power(const ZSlices& base, long k) {
  ZSlices acc = one_slices();
  for (long i = 0; i < k; ++i) acc = detail::mul(acc, base);
  return acc;
}

struct RayClass {
  ExponentVector ray;  // G z^g
  std::vector<Binomial> members;
  FactorClass tag = FactorClass::Contributing;
};

// Refine {1 - x^n_i} to a gcd-free basis in Q[x].
std::vector<std::pair<detail::QPoly, int>> refine(const std::vector<std::pair<long, int>>& elems) {
  std::vector<std::pair<detail::QPoly, int>> basis;
  for (const auto& [n, m] : elems) basis.emplace_back(detail::one_minus_power(n), m);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        detail::QPoly g = detail::gcd(basis[i].first, basis[j].first);
        if (detail::degree(g) < 1) continue;
        auto [pi, mi] = basis[i];
        auto [pj, mj] = basis[j];
        basis.erase(basis.begin() + static_cast<long>(j));
        basis.erase(basis.begin() + static_cast<long>(i));
        detail::QPoly qi = detail::scaled_to_unit_constant(detail::exact_quotient(pi, g));
        detail::QPoly qj = detail::scaled_to_unit_constant(detail::exact_quotient(pj, g));
        if (detail::degree(qi) > 0) basis.emplace_back(qi, mi);
        if (detail::degree(qj) > 0) basis.emplace_back(qj, mj);
        basis.emplace_back(g, mi + mj);
        changed = true;
      }
    }
  }
  return basis;
}

// q(x) with x = G z^g. Classes born from z^c - C are rescaled by G^-deg so the
// factor stays monic in z with a z-free constant term.
LaurentPolynomial lift(const detail::QPoly& q, const ExponentVector& ray, bool monic_in_z, const std::string& z) {
  LaurentPolynomial p;
  for (std::size_t j = 0; j < q.size(); ++j) p.add_term(ray.scaled(static_cast<long>(j)), q[j]);
  if (monic_in_z) {
    long d = detail::degree(q);
    ExponentVector top = ray.scaled(d).without(z);
    p = p.shifted(-top) * Rational(1 / q.back());
  }
  return p;
}

std::vector<ZFactor> class_basis(const RayClass& cls, const std::string& z) {
  std::vector<std::pair<long, int>> elems;
  for (const auto& b : cls.members) elems.emplace_back(b.n, b.mult);
  std::vector<ZFactor> out;
  bool monic = cls.members.front().negative_origin;
  for (const auto& [q, m] : refine(elems)) out.push_back({lift(q, cls.ray, monic, z), m});
  return out;
}

struct Classes {
  std::vector<RayClass> rays;
  long zpower = 0;
};

Classes group(const std::vector<ZFactor>& factors, long zpower, const std::string& z) {
  Classes c;
  c.zpower = zpower;
  for (const auto& f : factors) {
    long e = 0;
    if (is_z_power(f.poly, z, e)) {
      c.zpower += e * f.multiplicity;
      continue;
    }
    Binomial b = require_binomial(f.poly, z);
    b.mult = f.multiplicity;
    auto it = std::find_if(c.rays.begin(), c.rays.end(), [&](const RayClass& r) { return r.ray == b.ray; });
    if (it == c.rays.end()) {
      c.rays.push_back(RayClass{b.ray, {}, FactorClass::Contributing});
      it = std::prev(c.rays.end());
    }
    // Identical factors merge.
    auto same = std::find_if(it->members.begin(), it->members.end(),
                             [&](const Binomial& x) { return x.poly == b.poly; });
    if (same != it->members.end())
      same->mult += b.mult;
    else
      it->members.push_back(b);
  }
  for (auto& r : c.rays) {
    bool first = true;
    for (const auto& bf : class_basis(r, z)) {
      FactorClass t = classify_factor(bf.poly, z);
      if (first) r.tag = t;
      if (t != r.tag)
        throw Error(ErrorKind::UnclassifiableFactor,
                    "basis factors of one class disagree at " + render(bf.poly));
      first = false;
    }
  }
  return c;
}

// Inverse of unit*(1 - A z^a) modulo 1 - B z^R.
Localized binomial_inverse(const Binomial& b, const ExponentVector& B, long R, const ZSlices& e1) {
  long g = std::gcd(b.a, R);
  long s = R / g;
  long q = b.a / g;
  ExponentVector kappa = b.A.scaled(s) - B.scaled(q);
  if (kappa.empty()) throw std::logic_error("factors of distinct classes are not coprime");
  ZSlices num;
  for (long j = 0; j < s; ++j) num[b.a * j] = LaurentPolynomial(b.A.scaled(j));
  num = detail::scaled(num, monomial_inverse(b.unit));
  Localized out{detail::mod(num, e1), {}};
  out.den[kappa] = 1;
  return out;
}

LaurentPolynomial expand_den(const Denominator& den) {
  return NiceRational(LaurentPolynomial(1), den).expanded_denominator();
}

Localized localized_power(const Localized& x, int k, const ZSlices& e) {
  Localized acc{one_slices(), {}};
  for (int i = 0; i < k; ++i) acc = detail::mod(detail::mul(acc, x), e);
  return acc;
}

// numerator of the part of rem / (z^k prod D) belonging to class `alpha`.
Localized class_part(const Classes& cls, std::size_t alpha, const ZSlices& rem,
                     const std::vector<ZSlices>& dens, const std::string& z, StepBudget* budget) {
  const RayClass& rc = cls.rays[alpha];
  long N = 1;
  int mu = 0;
  for (const auto& b : rc.members) {
    N = std::lcm(N, b.n);
    mu += b.mult;
  }
  ExponentVector G = rc.ray.without(z);
  long gz = rc.ray.get(z);
  ExponentVector B = G.scaled(N);
  long R = gz * N;
  ZSlices e1{{0, LaurentPolynomial(1)}, {R, LaurentPolynomial(B, -1)}};
  ZSlices m_alpha = power(e1, mu);

  // u0: inverse of the cofactor modulo e1.
  Localized u{one_slices(), {}};
  for (std::size_t beta = 0; beta < cls.rays.size(); ++beta) {
    if (beta == alpha) continue;
    for (const auto& b : cls.rays[beta].members) {
      Localized inv = binomial_inverse(b, B, R, e1);
      u = detail::mod(detail::mul(u, localized_power(inv, b.mult, e1)), e1);
      if (budget) budget->tick();
    }
  }
  if (cls.zpower > 0) {
    // z^-1 = B z^(R-1) modulo e1.
    Localized zinv{ZSlices{{R - 1, LaurentPolynomial(B)}}, {}};
    u = detail::mod(detail::mul(u, localized_power(zinv, static_cast<int>(cls.zpower), e1)), e1);
  }

  if (mu > 1) {
    ZSlices cof = one_slices();
    if (cls.zpower > 0) cof = detail::shifted(cof, cls.zpower);
    for (std::size_t beta = 0; beta < cls.rays.size(); ++beta)
      if (beta != alpha) cof = detail::mod(detail::mul(cof, dens[beta]), m_alpha);
    for (int prec = 1; prec < mu; prec *= 2) {
      // u <- u (2 - cof u)
      ZSlices cu = detail::mod(detail::mul(cof, u.num), m_alpha);
      ZSlices two_minus{{0, expand_den(u.den) * Rational(2)}};
      detail::add_into(two_minus, cu, -1);
      Localized corr{two_minus, u.den};
      u = detail::mod(detail::mul(u, corr), m_alpha);
      if (budget) budget->tick();
    }
  }
  Localized part{detail::mul(rem, u.num), u.den};
  return detail::mod(part, dens[alpha]);
}

// Numerator of the part over z^k: rem * (prod D)^-1 truncated below z^k.
ZSlices pure_z_part(const Classes& cls, const ZSlices& rem, const std::vector<ZSlices>& dens) {
  long k = cls.zpower;
  auto truncate = [k](ZSlices s) {
    for (auto it = s.begin(); it != s.end();) {
      if (it->first >= k)
        it = s.erase(it);
      else
        ++it;
    }
    return s;
  };
  ZSlices p = one_slices();
  for (const auto& d : dens) p = truncate(detail::mul(p, d));
  LaurentPolynomial p0 = p.count(0) ? p.at(0) : LaurentPolynomial();
  if (!p0.is_monomial()) throw std::logic_error("cofactor constant term is not a unit");
  LaurentPolynomial inv0 = monomial_inverse(p0);
  std::vector<LaurentPolynomial> inv(static_cast<std::size_t>(k));
  for (long j = 0; j < k; ++j) {
    LaurentPolynomial acc = j == 0 ? LaurentPolynomial(1) : LaurentPolynomial();
    for (long i = 1; i <= j; ++i) {
      auto it = p.find(i);
      if (it != p.end()) acc -= it->second * inv[static_cast<std::size_t>(j - i)];
    }
    inv[static_cast<std::size_t>(j)] = acc * inv0;
  }
  ZSlices invs;
  for (long j = 0; j < k; ++j)
    if (!inv[static_cast<std::size_t>(j)].is_zero()) invs[j] = inv[static_cast<std::size_t>(j)];
  return truncate(detail::mul(rem, invs));
}

// Which parts to compute. `Smaller` picks whichever side of
// h = F - (noncontributing parts) - (pure z part) has fewer classes.
enum class Keep { All, Contributing, Remainder, Smaller };

PartialFractions decompose(const ZFraction& zf, const std::string& z, Keep keep, StepBudget* budget,
                           bool* complement = nullptr) {
  PartialFractions pf;
  pf.z_free = zf.z_free;
  Classes cls = group(zf.factors, zf.zpower, z);
  std::vector<ZSlices> dens;
  ZSlices full = one_slices();
  if (cls.zpower > 0) full = detail::shifted(full, cls.zpower);
  for (const auto& r : cls.rays) {
    ZSlices d = one_slices();
    for (const auto& b : r.members) d = detail::mul(d, power(slices_of(b.poly, z), b.mult));
    full = detail::mul(full, d);
    dens.push_back(std::move(d));
  }
  if (keep == Keep::Smaller) {
    std::size_t contributing = 0;
    for (const auto& r : cls.rays) contributing += r.tag == FactorClass::Contributing;
    std::size_t others = cls.rays.size() - contributing + (cls.zpower > 0 ? 1 : 0);
    keep = others < contributing ? Keep::Remainder : Keep::Contributing;
  }
  if (complement) *complement = keep == Keep::Remainder;
  ZSlices q, rem;
  detail::divmod(slices_of(zf.numerator, z), full, q, rem);
  if (keep != Keep::Remainder) pf.polynomial_part = detail::from_slices(q, z);

  for (std::size_t alpha = 0; alpha < cls.rays.size(); ++alpha) {
    const RayClass& rc = cls.rays[alpha];
    bool contributing = rc.tag == FactorClass::Contributing;
    if ((keep == Keep::Contributing && !contributing) || (keep == Keep::Remainder && contributing)) continue;
    FractionPart part;
    part.tag = rc.tag;
    for (const auto& b : rc.members) part.denominator.push_back({b.poly, b.mult});
    if (!rem.empty()) {
      Localized a = class_part(cls, alpha, rem, dens, z, budget);
      part.numerator = NiceRational(detail::from_slices(a.num, z), a.den);
    }
    pf.parts.push_back(std::move(part));
  }
  if (cls.zpower > 0 && keep != Keep::Contributing) {
    FractionPart part;
    part.tag = FactorClass::PureZ;
    part.denominator.push_back({LaurentPolynomial::var(z), static_cast<int>(cls.zpower)});
    if (!rem.empty()) part.numerator = NiceRational(detail::from_slices(pure_z_part(cls, rem, dens), z));
    pf.parts.push_back(std::move(part));
  }
  std::stable_sort(pf.parts.begin(), pf.parts.end(), [](const FractionPart& x, const FractionPart& y) {
    return render(x.denominator.front().poly) < render(y.denominator.front().poly);
  });
  return pf;
}

NiceRational part_value(const FractionPart& part, const std::string& z) {
  NiceRational v = part.numerator;
  for (const auto& f : part.denominator) v = nr_mul(v, reciprocal(f.poly, f.multiplicity, z));
  return v;
}

}  // namespace

// ------------------------------------------------------------------ public

ZFraction to_zfraction(const NiceRational& f, const std::string& z) {
  ZFraction zf;
  LaurentPolynomial num = f.numerator();
  for (const auto& [m, k] : f.denominator()) {
    long b = m.get(z);
    if (b == 0) {
      zf.z_free[m] += k;
      continue;
    }
    LaurentPolynomial poly;
    if (b > 0) {
      poly = LaurentPolynomial(1);
      poly.add_term(m, -1);
    } else {
      poly = LaurentPolynomial::var(z, -b);
      poly.add_term(m.without(z), -1);
      num = num.shifted(ExponentVector::var(z, -b * k));
    }
    zf.factors.push_back({poly, k});
  }
  long low = num.is_zero() ? 0 : num.min_exponent(z);
  if (low < 0) {
    zf.zpower = -low;
    num = num.shifted(ExponentVector::var(z, -low));
  }
  zf.numerator = std::move(num);
  return zf;
}

NiceRational from_zfraction(const ZFraction& zf, const std::string& z) {
  NiceRational v(zf.numerator.shifted(ExponentVector::var(z, -zf.zpower)), zf.z_free);
  for (const auto& f : zf.factors) v = nr_mul(v, reciprocal(f.poly, f.multiplicity, z));
  return v;
}

FactorClass classify_factor(const LaurentPolynomial& p, const std::string& z) {
  if (p == LaurentPolynomial::var(z)) return FactorClass::PureZ;
  if (p.is_zero() || p.min_exponent(z) < 0 || p.max_exponent(z) <= 0)
    throw Error(ErrorKind::UnclassifiableFactor, render(p) + " is not a polynomial of positive degree in " + z);
  LaurentPolynomial c0 = p.evaluated(z, 0);
  if (c0.is_zero()) throw Error(ErrorKind::UnclassifiableFactor, render(p) + " vanishes at " + z + "=0");
  if (c0.is_constant()) return FactorClass::Contributing;
  for (const auto& [m, _] : c0.terms()) {
    bool ok = !m.empty();
    for (const auto& [n, e] : m.entries()) ok = ok && e > 0;
    if (!ok)
      throw Error(ErrorKind::UnclassifiableFactor,
                  "constant term of " + render(p) + " is neither a unit nor of positive degree");
  }
  return FactorClass::NonContributing;
}

std::vector<ZFactor> coprime_basis(const std::vector<ZFactor>& factors, const std::string& z) {
  Classes cls = group(factors, 0, z);
  std::vector<ZFactor> out;
  if (cls.zpower > 0) out.push_back({LaurentPolynomial::var(z), static_cast<int>(cls.zpower)});
  for (const auto& r : cls.rays)
    for (auto& f : class_basis(r, z)) out.push_back(std::move(f));
  std::stable_sort(out.begin(), out.end(),
                   [](const ZFactor& a, const ZFactor& b) { return render(a.poly) < render(b.poly); });
  return out;
}

PartialFractions partial_fraction_z(const ZFraction& zf, const std::string& z) {
  return decompose(zf, z, Keep::All, nullptr);
}

NiceRational recombine(const PartialFractions& pf, const std::string& z) {
  std::vector<NiceRational> terms;
  terms.emplace_back(pf.polynomial_part);
  for (const auto& part : pf.parts) terms.push_back(part_value(part, z));
  return nr_mul(sum_reduced(std::move(terms)), NiceRational(LaurentPolynomial(1), pf.z_free));
}

NiceRational xin_nonneg(const NiceRational& f, const std::string& z, StepBudget* budget) {
  if (f.is_zero() || !f.variables().count(z)) return f;
  ZFraction zf = to_zfraction(f, z);
  bool complement = false;
  PartialFractions pf = decompose(zf, z, Keep::Smaller, budget, &complement);

  std::set<ExponentVector, LexLess> kappas;
  std::vector<NiceRational> terms;
  if (complement) {
    ZFraction bare = zf;
    bare.z_free.clear();
    terms.push_back(from_zfraction(bare, z));
  } else {
    terms.emplace_back(pf.polynomial_part);
  }
  for (const auto& part : pf.parts) {
    for (const auto& [m, _] : part.numerator.denominator()) kappas.insert(m);
    terms.push_back(complement ? nr_neg(part_value(part, z)) : part_value(part, z));
  }
  NiceRational h = sum_reduced(std::move(terms));

  // Decomposition denominators 1 - K either flip to a nonnegative monomial or
  // are spurious and cancel from the recombined numerator.
  LaurentPolynomial num = h.numerator();
  Denominator den;
  for (const auto& [K, k] : h.denominator()) {
    if (!kappas.count(K)) {
      den[K] += k;
      continue;
    }
    bool nonneg = true;
    bool nonpos = true;
    for (const auto& [_, e] : K.entries()) {
      nonneg = nonneg && e > 0;
      nonpos = nonpos && e < 0;
    }
    if (nonneg) {
      den[K] += k;
    } else if (nonpos) {
      for (int i = 0; i < k; ++i) num = -num.shifted(-K);
      den[-K] += k;
    } else {
      LaurentPolynomial b(1);
      b.add_term(K, -1);
      for (int i = 0; i < k; ++i) {
        auto q = num.exact_div(b);
        if (!q) throw std::logic_error("decomposition factor (1-" + render(K) + ") did not cancel");
        num = std::move(*q);
      }
    }
  }
  NiceRational result = normalize(nr_mul(NiceRational(std::move(num), std::move(den)),
                                         NiceRational(LaurentPolynomial(1), pf.z_free)));
  // Whatever survives must be a power series in the other variables.
  for (const auto& [m, _] : result.denominator())
    for (const auto& [n, e] : m.entries())
      if (n != z && e < 0)
        throw std::logic_error("nonnegative part kept the factor (1-" + render(m) + ")");
  return result;
}

NiceRational xin_constant(const NiceRational& f, const std::string& z, StepBudget* budget) {
  return eval_at(xin_nonneg(f, z, budget), z, 0);
}

}  // namespace ldsolve
