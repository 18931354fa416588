#include "qpoly.hpp"

#include <stdexcept>

namespace ldsolve::detail {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long degree(const QPoly& p) { return static_cast<long>(p.size()) - 1; }

QPoly one_minus_power(long n) {
  QPoly p(static_cast<std::size_t>(n) + 1, Rational(0));
  p[0] = 1;
  p[static_cast<std::size_t>(n)] -= 1;
  trim(p);
  return p;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.empty()) throw std::invalid_argument("division by zero polynomial");
  r = a;
  trim(r);
  long db = degree(b);
  q.assign(r.size() > b.size() ? r.size() - b.size() + 1 : 1, Rational(0));
  Rational inv = 1 / b.back();
  while (degree(r) >= db) {
    long shift = degree(r) - db;
    Rational c = r.back() * inv;
    q[static_cast<std::size_t>(shift)] = c;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
    trim(r);
  }
  trim(q);
}

QPoly scaled_to_unit_constant(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational s = p[0] != 0 ? p[0] : p.back();
  for (auto& c : p) c /= s;
  return p;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return scaled_to_unit_constant(a);
}

QPoly exact_quotient(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  if (!r.empty()) throw std::logic_error("inexact polynomial quotient");
  return q;
}

}  // namespace ldsolve::detail
