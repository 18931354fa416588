#include <algorithm>
#include <cctype>
#include <vector>

#include "ldsolve/polyring.hpp"

namespace ldsolve {

std::string render_rational(const Rational& q) { return q.get_str(); }

std::string render(const ExponentVector& m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& [n, e] : m.entries()) {
    if (!out.empty()) out += '*';
    out += n;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string render(const LaurentPolynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<ExponentVector, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return CanonicalLess{}(a.first, b.first); });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational a = abs(c);
    if (c < 0)
      out += '-';
    else if (!first)
      out += '+';
    if (m.empty()) {
      out += render_rational(a);
    } else {
      if (a != 1) out += render_rational(a) + '*';
      out += render(m);
    }
    first = false;
  }
  return out;
}

std::string render(const NiceRational& f) {
  std::string num = render(f.numerator());
  if (f.denominator().empty()) return num;
  if (f.numerator().size() > 1) num = '(' + num + ')';
  std::vector<std::string> parts;
  for (const auto& [m, k] : f.denominator()) {
    std::string s = "(1-" + render(m) + ')';
    if (k != 1) s += '^' + std::to_string(k);
    parts.push_back(std::move(s));
  }
  std::string den;
  if (parts.size() == 1) {
    den = parts[0];
  } else {
    den = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) den += '*';
      den += parts[i];
    }
    den += ')';
  }
  return num + " / " + den;
}

std::string render(const GeneralRational& f) {
  std::string num = render(f.numerator());
  if (f.denominator() == LaurentPolynomial(1)) return num;
  if (f.numerator().size() > 1) num = '(' + num + ')';
  return num + " / (" + render(f.denominator()) + ')';
}

// ------------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  LaurentPolynomial polynomial_only() {
    LaurentPolynomial p = expr();
    skip();
    if (!at_end()) fail("unexpected character");
    return p;
  }

  NiceRational nice_rational() {
    LaurentPolynomial num = expr();
    skip();
    Denominator den;
    if (peek() == '/') {
      ++pos_;
      denominator_product(den, 1);
      skip();
    }
    if (!at_end()) fail("unexpected character");
    return NiceRational(std::move(num), std::move(den));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    // Single-line input: column is 1-based offset.
    throw SyntaxError(1, static_cast<int>(pos_) + 1, what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() {
    skip();
    return at_end() ? '\0' : s_[pos_];
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long integer() {
    skip();
    bool neg = false;
    if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
    long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  LaurentPolynomial expr() {
    LaurentPolynomial acc;
    bool first = true;
    while (true) {
      char c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      LaurentPolynomial t = product();
      acc += neg ? -t : t;
      first = false;
    }
    return acc;
  }

  LaurentPolynomial product() {
    LaurentPolynomial acc = power();
    while (peek() == '*') {
      ++pos_;
      acc *= power();
    }
    return acc;
  }

  LaurentPolynomial power() {
    LaurentPolynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      long e = integer();
      if (base.is_monomial() && base.leading().second == 1)
        return LaurentPolynomial(base.leading().first.scaled(e));
      if (e < 0) fail("negative power of a non-monomial");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  LaurentPolynomial atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string n = digits();
      // "p/q" is a rational literal only when a digit follows the slash.
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
          std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        std::string d = digits();
        Rational q(n + "/" + d);
        if (d.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        q.canonicalize();
        return LaurentPolynomial(q);
      }
      return LaurentPolynomial(Rational(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return LaurentPolynomial::var(std::string(s_.substr(start, pos_ - start)));
    }
    if (c == '(') {
      ++pos_;
      LaurentPolynomial p = expr();
      expect(')');
      return p;
    }
    fail(at_end() ? "unexpected end of input" : "unexpected character");
  }

  void add_binomial(Denominator& den, const LaurentPolynomial& p, int k) {
    // Accept exactly 1 - M.
    if (p.size() != 2 || p.constant_term() != 1) fail("denominator factor must have the form (1-M)");
    for (const auto& [m, c] : p.terms()) {
      if (m.empty()) continue;
      if (c != -1) fail("denominator factor must have the form (1-M)");
      den[m] += k;
    }
  }

  void denominator_atom(Denominator& den, int k) {
    expect('(');
    if (peek() == '(') {
      std::size_t save = pos_;
      // Either a nested product of factors or a parenthesised binomial.
      try {
        Denominator inner;
        denominator_product(inner, 1);
        expect(')');
        int e = 1;
        if (peek() == '^') {
          ++pos_;
          e = static_cast<int>(integer());
        }
        for (const auto& [m, j] : inner) den[m] += j * e * k;
        return;
      } catch (const SyntaxError&) {
        pos_ = save;
      }
    }
    LaurentPolynomial p = expr();
    expect(')');
    int e = 1;
    if (peek() == '^') {
      ++pos_;
      e = static_cast<int>(integer());
      if (e <= 0) fail("factor multiplicity must be positive");
    }
    add_binomial(den, p, e * k);
  }

  void denominator_product(Denominator& den, int k) {
    denominator_atom(den, k);
    while (peek() == '*') {
      ++pos_;
      denominator_atom(den, k);
    }
  }
};

}  // namespace

LaurentPolynomial parse_polynomial(std::string_view text) { return Parser(text).polynomial_only(); }

NiceRational parse_nice_rational(std::string_view text) { return Parser(text).nice_rational(); }

}  // namespace ldsolve
