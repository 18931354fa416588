#include "zpoly.hpp"

#include <iterator>
#include <stdexcept>

namespace ldsolve::detail {

ZSlices to_slices(const LaurentPolynomial& p, const std::string& z) {
  ZSlices out = p.slices(z);
  return out;
}

LaurentPolynomial from_slices(const ZSlices& s, const std::string& z) {
  LaurentPolynomial out;
  for (const auto& [d, c] : s) out += c.shifted(ExponentVector::var(z, d));
  return out;
}

static void clean(ZSlices& s) {
  for (auto it = s.begin(); it != s.end();) {
    if (it->second.is_zero())
      it = s.erase(it);
    else
      ++it;
  }
}

ZSlices mul(const ZSlices& a, const ZSlices& b) {
  ZSlices out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) out[da + db] += ca * cb;
  clean(out);
  return out;
}

void add_into(ZSlices& a, const ZSlices& b, const Rational& scale) {
  for (const auto& [d, c] : b) a[d] += c * scale;
  clean(a);
}

ZSlices scaled(const ZSlices& a, const LaurentPolynomial& c) {
  ZSlices out;
  if (c.is_zero()) return out;
  for (const auto& [d, x] : a) out[d] = x * c;
  clean(out);
  return out;
}

ZSlices shifted(const ZSlices& a, long k) {
  ZSlices out;
  for (const auto& [d, x] : a) out.emplace(d + k, x);
  return out;
}

void divmod(const ZSlices& p, const ZSlices& e, ZSlices& q, ZSlices& r) {
  if (e.empty()) throw std::invalid_argument("division by zero");
  const auto& [de, lc] = *e.rbegin();
  if (!lc.is_monomial()) throw std::logic_error("divisor leading coefficient is not a monomial");
  ExponentVector inv_m = -lc.leading().first;
  Rational inv_c = 1 / lc.leading().second;
  q.clear();
  r = p;
  while (!r.empty() && r.rbegin()->first >= de) {
    auto top = std::prev(r.end());
    long shift = top->first - de;
    LaurentPolynomial c = top->second.shifted(inv_m) * inv_c;
    q[shift] += c;
    // The top slice cancels exactly against c * lc.
    r.erase(top);
    for (const auto& [j, ej] : e)
      if (j != de) r[j + shift] -= c * ej;
    clean(r);
  }
  clean(q);
}

ZSlices mod(const ZSlices& p, const ZSlices& e) {
  ZSlices q, r;
  divmod(p, e, q, r);
  return r;
}

Localized mul(const Localized& a, const Localized& b) {
  Localized out{mul(a.num, b.num), a.den};
  for (const auto& [m, k] : b.den) out.den[m] += k;
  return out;
}

Localized mod(const Localized& a, const ZSlices& e) { return Localized{mod(a.num, e), a.den}; }

}  // namespace ldsolve::detail
