#include <algorithm>
#include <mutex>
#include <unordered_set>

#include "ldsolve/polyring.hpp"

namespace ldsolve {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateFactor: return "DegenerateFactor";
    case ErrorKind::NonExpandable: return "NonExpandable";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::NotMixed: return "NotMixed";
    case ErrorKind::ImpureInput: return "ImpureInput";
    case ErrorKind::UnclassifiableFactor: return "UnclassifiableFactor";
    case ErrorKind::StepCeilingExceeded: return "StepCeilingExceeded";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ParameterLimit: return "ParameterLimit";
  }
  return "Error";
}

Symbol::Symbol(std::string_view name) {
  static std::mutex lock;
  static std::unordered_set<std::string> names;  // node based: addresses are stable
  std::lock_guard<std::mutex> hold(lock);
  p_ = &*names.emplace(name).first;
}

ExponentVector::ExponentVector(std::initializer_list<Entry> entries) {
  for (const auto& [name, e] : entries) set(name, get(name) + e);
}

ExponentVector ExponentVector::var(std::string name, long exponent) {
  ExponentVector v;
  if (exponent != 0) v.e_.emplace_back(std::move(name), exponent);
  return v;
}

long ExponentVector::get(std::string_view name) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), name,
                             [](const Entry& a, std::string_view n) { return a.first.str() < n; });
  if (it != e_.end() && it->first.str() == name) return it->second;
  return 0;
}

void ExponentVector::set(Symbol sym, long exponent) {
  auto it = std::lower_bound(e_.begin(), e_.end(), sym, [](const Entry& a, Symbol n) { return a.first < n; });
  if (it != e_.end() && it->first == sym) {
    if (exponent == 0)
      e_.erase(it);
    else
      it->second = exponent;
  } else if (exponent != 0) {
    e_.insert(it, Entry{sym, exponent});
  }
}

long ExponentVector::total_degree() const {
  long d = 0;
  for (const auto& [_, e] : e_) d += e;
  return d;
}

long ExponentVector::degree_in(const VarSet& vars) const {
  long d = 0;
  for (const auto& [n, e] : e_)
    if (vars.count(n)) d += e;
  return d;
}

bool ExponentVector::is_nonnegative() const {
  return std::all_of(e_.begin(), e_.end(), [](const Entry& x) { return x.second > 0; });
}

bool ExponentVector::is_nonpositive() const {
  return std::all_of(e_.begin(), e_.end(), [](const Entry& x) { return x.second < 0; });
}

template <class Op>
ExponentVector ExponentVector::combine(const ExponentVector& a, const ExponentVector& b, Op op) {
  ExponentVector r;
  auto& out = r.e_;
  out.reserve(a.e_.size() + b.e_.size());
  auto i = a.e_.begin();
  auto j = b.e_.begin();
  while (i != a.e_.end() || j != b.e_.end()) {
    if (j == b.e_.end() || (i != a.e_.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.e_.end() || j->first < i->first) {
      out.emplace_back(j->first, op(0, j->second));
      ++j;
    } else {
      long e = op(i->second, j->second);
      if (e != 0) out.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  if (other.e_.empty()) return *this;
  if (e_.empty()) return other;
  return combine(*this, other, [](long x, long y) { return x + y; });
}

ExponentVector ExponentVector::operator-(const ExponentVector& other) const {
  if (other.e_.empty()) return *this;
  return combine(*this, other, [](long x, long y) { return x - y; });
}

ExponentVector ExponentVector::scaled(long k) const {
  ExponentVector r;
  if (k == 0) return r;
  r.e_ = e_;
  for (auto& [_, e] : r.e_) e *= k;
  return r;
}

ExponentVector ExponentVector::without(std::string_view name) const {
  ExponentVector r;
  for (const auto& x : e_)
    if (x.first.str() != name) r.e_.push_back(x);
  return r;
}

ExponentVector ExponentVector::restricted(const VarSet& vars) const {
  ExponentVector r;
  for (const auto& x : e_)
    if (vars.count(x.first.str())) r.e_.push_back(x);
  return r;
}

bool LexLess::operator()(const ExponentVector& a, const ExponentVector& b) const {
  const auto& x = a.entries();
  const auto& y = b.entries();
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (i != x.end() && j != y.end() && i->first == j->first) {
      if (i->second != j->second) return i->second < j->second;
      ++i;
      ++j;
      continue;
    }
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      // b has exponent 0 on i->first
      return i->second < 0;
    }
    return 0 < j->second;
  }
  return false;
}

bool CanonicalLess::operator()(const ExponentVector& a, const ExponentVector& b) const {
  long da = a.total_degree();
  long db = b.total_degree();
  if (da != db) return da < db;
  // Same degree: the vector with the larger exponent on the first differing
  // variable comes first.
  return LexLess{}(b, a);
}

}  // namespace ldsolve
