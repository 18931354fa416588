#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ldsolve/errors.hpp"

namespace ldsolve {

using Rational = mpq_class;
using VarSet = std::set<std::string, std::less<>>;

// Interned variable name. Equal names share storage, so equality is a
// pointer test; ordering is by name.
class Symbol {
 public:
  Symbol() : Symbol(std::string_view{}) {}
  Symbol(std::string_view name);     // NOLINT: names convert implicitly
  Symbol(const std::string& name) : Symbol(std::string_view(name)) {}  // NOLINT
  Symbol(const char* name) : Symbol(std::string_view(name)) {}         // NOLINT

  const std::string& str() const noexcept { return *p_; }
  operator const std::string&() const noexcept { return *p_; }  // NOLINT
  operator std::string_view() const noexcept { return *p_; }    // NOLINT

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
    if (a.p_ == b.p_) return std::strong_ordering::equal;
    return a.p_->compare(*b.p_) <=> 0;
  }

 private:
  const std::string* p_;
};

// Sparse exponent assignment; zero exponents are never stored and entries
// are kept sorted by variable name.
class ExponentVector {
 public:
  using Entry = std::pair<Symbol, long>;
  // Inline room for the handful of variables a typical monomial carries.
  using Entries = boost::container::small_vector<Entry, 6>;

  ExponentVector() = default;
  ExponentVector(std::initializer_list<Entry> entries);

  static ExponentVector var(std::string name, long exponent = 1);

  long get(std::string_view name) const;
  void set(Symbol name, long exponent);
  bool empty() const noexcept { return e_.empty(); }
  std::size_t size() const noexcept { return e_.size(); }
  const Entries& entries() const noexcept { return e_; }

  long total_degree() const;
  long degree_in(const VarSet& vars) const;
  bool contains(std::string_view name) const { return get(name) != 0; }
  bool is_nonnegative() const;
  bool is_nonpositive() const;

  ExponentVector operator+(const ExponentVector& other) const;
  ExponentVector operator-(const ExponentVector& other) const;
  ExponentVector operator-() const { return scaled(-1); }
  ExponentVector scaled(long k) const;
  ExponentVector without(std::string_view name) const;
  // Exponents restricted to `vars`.
  ExponentVector restricted(const VarSet& vars) const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  template <class Op>
  static ExponentVector combine(const ExponentVector& a, const ExponentVector& b, Op op);

  Entries e_;
};

// Lexicographic group order on Z^n (earlier names more significant). Used as
// the storage order of polynomials and for leading terms in exact division.
struct LexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

// Display order: total degree first, then higher exponent of the
// alphabetically earlier variable first. Denominator factors and rendered
// terms follow this order.
struct CanonicalLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

class LaurentPolynomial {
 public:
  using Terms = std::map<ExponentVector, Rational, LexLess>;

  LaurentPolynomial() = default;
  LaurentPolynomial(const Rational& c);  // NOLINT: constants convert implicitly
  LaurentPolynomial(long c) : LaurentPolynomial(Rational(c)) {}  // NOLINT
  LaurentPolynomial(const ExponentVector& m, const Rational& c = 1);

  static LaurentPolynomial monomial(const ExponentVector& m, const Rational& c = 1) {
    return LaurentPolynomial(m, c);
  }
  static LaurentPolynomial var(const std::string& name, long e = 1) {
    return LaurentPolynomial(ExponentVector::var(name, e));
  }
  // Terms already sorted by LexLess with distinct monomials; zeros are dropped.
  static LaurentPolynomial from_sorted(std::vector<std::pair<ExponentVector, Rational>>&& terms);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  Rational coefficient(const ExponentVector& m) const;

  // Leading/trailing terms under LexLess. Undefined on zero.
  const std::pair<const ExponentVector, Rational>& leading() const { return *terms_.rbegin(); }
  const std::pair<const ExponentVector, Rational>& trailing() const { return *terms_.begin(); }

  void add_term(const ExponentVector& m, const Rational& c);

  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const Rational& c);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }
  LaurentPolynomial operator-() const;
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  LaurentPolynomial shifted(const ExponentVector& m) const;  // multiply by a monomial
  LaurentPolynomial pow(unsigned k) const;

  // Variables occurring with nonzero exponent.
  VarSet variables() const;
  long max_exponent(std::string_view v) const;  // 0 on the zero polynomial
  long min_exponent(std::string_view v) const;
  bool has_negative_exponent_in(const VarSet& vars) const;

  // Substitute v := value (value a rational constant).
  LaurentPolynomial evaluated(std::string_view v, const Rational& value) const;
  // Split by exponent of v: exponent -> coefficient (free of v).
  std::map<long, LaurentPolynomial> slices(std::string_view v) const;
  // Drop terms whose total degree in `vars` exceeds `bound`.
  LaurentPolynomial truncated(const VarSet& vars, long bound) const;
  // Product truncated to total degree `bound` in `vars`.
  static LaurentPolynomial mul_truncated(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                         const VarSet& vars, long bound);

  // Exact quotient when `divisor` divides *this in the Laurent ring, else nullopt.
  std::optional<LaurentPolynomial> exact_div(const LaurentPolynomial& divisor) const;

 private:
  void accumulate(const LaurentPolynomial& o, const Rational& sign);
  std::optional<LaurentPolynomial> divide_two_term(const LaurentPolynomial& d) const;

  Terms terms_;
};

LaurentPolynomial lp_add(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial lp_mul(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial lp_neg(const LaurentPolynomial& p);

struct BinomialFactor {
  ExponentVector monomial;  // the M in (1 - M)
  int multiplicity = 1;
  friend bool operator==(const BinomialFactor&, const BinomialFactor&) = default;
};

using Denominator = std::map<ExponentVector, int, CanonicalLess>;

// Total order on whole denominators, for grouping terms by denominator.
struct DenominatorLess {
  bool operator()(const Denominator& a, const Denominator& b) const;
};

// numerator / prod (1 - M)^k.
class NiceRational {
 public:
  NiceRational() = default;  // zero
  explicit NiceRational(LaurentPolynomial numerator) : num_(std::move(numerator)) {}
  NiceRational(LaurentPolynomial numerator, const std::vector<BinomialFactor>& factors);
  NiceRational(LaurentPolynomial numerator, Denominator den);

  static NiceRational one() { return NiceRational(LaurentPolynomial(1)); }
  // prod_{v in vars} 1/(1 - v)
  static NiceRational free_monoid(const std::vector<std::string>& vars);

  const LaurentPolynomial& numerator() const noexcept { return num_; }
  const Denominator& denominator() const noexcept { return den_; }
  std::vector<BinomialFactor> factors() const;
  bool is_zero() const noexcept { return num_.is_zero(); }
  VarSet variables() const;

  void multiply_factor(const ExponentVector& m, int k = 1);
  LaurentPolynomial expanded_denominator() const;

  friend bool operator==(const NiceRational& a, const NiceRational& b) = default;

 private:
  void check();
  LaurentPolynomial num_;
  Denominator den_;
};

// General quotient of Laurent polynomials, scaled so the denominator's
// leading coefficient (under LexLess) is 1.
class GeneralRational {
 public:
  GeneralRational() : den_(1) {}
  GeneralRational(LaurentPolynomial num, LaurentPolynomial den);
  explicit GeneralRational(const NiceRational& f);

  const LaurentPolynomial& numerator() const noexcept { return num_; }
  const LaurentPolynomial& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  friend GeneralRational operator+(const GeneralRational& a, const GeneralRational& b);
  friend GeneralRational operator-(const GeneralRational& a, const GeneralRational& b);
  friend GeneralRational operator*(const GeneralRational& a, const GeneralRational& b);

 private:
  LaurentPolynomial num_;
  LaurentPolynomial den_;
};

using Substitution = std::map<std::string, ExponentVector, std::less<>>;

NiceRational substitute_monomial(const NiceRational& f, const Substitution& sigma);
LaurentPolynomial substitute_monomial(const LaurentPolynomial& p, const Substitution& sigma);
ExponentVector substitute_monomial(const ExponentVector& m, const Substitution& sigma);

LaurentPolynomial expand_truncated(const NiceRational& f, const VarSet& vars, long bound);

GeneralRational coefficient_of(const GeneralRational& f, const std::string& v, long d);
NiceRational coefficient_of(const NiceRational& f, const std::string& v, long d);

NiceRational eval_at(const NiceRational& f, const std::string& v, int value);

bool rf_equal(const NiceRational& f, const NiceRational& g);
bool rf_equal(const GeneralRational& f, const GeneralRational& g);
bool rf_equal(const NiceRational& f, const GeneralRational& g);

NiceRational normalize(const NiceRational& f);

// Sum, difference and product; sums use the least common multiset of factors.
NiceRational nr_add(const NiceRational& f, const NiceRational& g);
NiceRational nr_sub(const NiceRational& f, const NiceRational& g);
NiceRational nr_mul(const NiceRational& f, const NiceRational& g);
NiceRational nr_neg(const NiceRational& f);
NiceRational nr_sum(const std::vector<NiceRational>& terms);
// Normalized sum that merges parts sharing a factor first, so factors that
// cancel in the total never reach a common denominator with the rest.
NiceRational sum_reduced(std::vector<NiceRational> parts);

// f times the monomial m.
NiceRational nr_shift(const NiceRational& f, const ExponentVector& m);

// Replace a factor (1 - M^k) by (1 - M) whenever the numerator is divisible by
// 1 + M + ... + M^(k-1); then normalize.
NiceRational reduce_factors(const NiceRational& f);

// Text form. Rendering is canonical; parsing accepts the rendered form.
std::string render(const ExponentVector& m);
std::string render(const LaurentPolynomial& p);
std::string render(const NiceRational& f);
std::string render(const GeneralRational& f);
std::string render_rational(const Rational& q);

LaurentPolynomial parse_polynomial(std::string_view text);
NiceRational parse_nice_rational(std::string_view text);

}  // namespace ldsolve
