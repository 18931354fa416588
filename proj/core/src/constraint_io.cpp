#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include "ldsolve/dioph.hpp"

namespace ldsolve {

namespace {

struct LinearSide {
  std::map<std::string, long, std::less<>> coeffs;
  long constant = 0;
};

class LineParser {
 public:
  LineParser(std::string_view line, int lineno) : s_(line), line_(lineno) {}

  // lhs REL rhs, moved to the left.
  Constraint constraint(std::vector<std::string>& order, const std::vector<std::string>* declared) {
    LinearSide lhs = side(order, declared);
    skip();
    std::size_t rel_col = pos_;
    Relation rel;
    bool flip = false;
    if (take(">=")) {
      rel = Relation::GreaterEqual;
    } else if (take("<=")) {
      rel = Relation::GreaterEqual;
      flip = true;
    } else if (take("==") || take("=")) {
      rel = Relation::Equal;
    } else if (take(">")) {
      rel = Relation::StrictlyGreater;
    } else if (take("<")) {
      rel = Relation::StrictlyGreater;
      flip = true;
    } else {
      pos_ = rel_col;
      fail(at_end() ? "missing relation" : "expected a relation");
    }
    LinearSide rhs = side(order, declared);
    skip();
    if (!at_end()) fail("unexpected character");
    Constraint c;
    c.rel = rel;
    int sign = flip ? -1 : 1;
    for (const auto& [v, a] : lhs.coeffs) c.coeffs[v] += sign * a;
    for (const auto& [v, a] : rhs.coeffs) c.coeffs[v] -= sign * a;
    for (auto it = c.coeffs.begin(); it != c.coeffs.end();) {
      if (it->second == 0)
        it = c.coeffs.erase(it);
      else
        ++it;
    }
    c.constant = sign * (lhs.constant - rhs.constant);
    return c;
  }

 private:
  std::string_view s_;
  int line_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(line_, static_cast<int>(pos_) + 1, what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  bool take(std::string_view tok) {
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
  bool ident_start() const {
    return !at_end() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }

  long number() {
    long v = 0;
    while (digit()) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  std::string ident() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  LinearSide side(std::vector<std::string>& order, const std::vector<std::string>* declared) {
    LinearSide out;
    bool first = true;
    while (true) {
      skip();
      long sign = 1;
      if (!at_end() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        break;
      }
      long coeff = 1;
      bool have_number = false;
      if (digit()) {
        coeff = number();
        have_number = true;
        skip();
        if (!at_end() && s_[pos_] == '*') {
          ++pos_;
          skip();
          if (!ident_start()) fail("expected a variable after '*'");
        }
      }
      if (ident_start()) {
        std::size_t col = pos_;
        std::string v = ident();
        if (declared && std::find(declared->begin(), declared->end(), v) == declared->end()) {
          pos_ = col;
          throw Error(ErrorKind::UnknownVariable,
                      "line " + std::to_string(line_) + ": variable " + v + " is not declared");
        }
        if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
        out.coeffs[v] += sign * coeff;
      } else if (have_number) {
        out.constant += sign * coeff;
      } else {
        fail(at_end() ? "expected a term" : "expected a term");
      }
      first = false;
    }
    return out;
  }
};

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

ConstraintSystem parse_constraints(std::string_view text) {
  ConstraintSystem sys;
  std::optional<std::vector<std::string>> declared;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    std::string t = trim(line);
    if (t.rfind("variables:", 0) == 0) {
      if (declared || !sys.constraints.empty())
        throw SyntaxError(lineno, 1, "the variables header must come first and only once");
      declared.emplace();
      std::string list = t.substr(10);
      std::replace(list.begin(), list.end(), ',', ' ');
      std::istringstream names(list);
      std::string n;
      while (names >> n) {
        bool ok = (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_') &&
                  std::all_of(n.begin(), n.end(),
                              [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
        if (!ok) throw SyntaxError(lineno, static_cast<int>(raw.find(n)) + 1, "bad variable name " + n);
        declared->push_back(n);
      }
      sys.variables = *declared;
      continue;
    }
    LineParser p(line, lineno);
    sys.constraints.push_back(p.constraint(sys.variables, declared ? &*declared : nullptr));
  }
  validate(sys);
  return sys;
}

ConstraintSystem parse_constraints_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t off = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(off), '\n'));
    std::size_t nl = text.rfind('\n', off == 0 ? 0 : off - 1);
    int col = static_cast<int>(nl == std::string_view::npos ? off + 1 : off - nl);
    throw SyntaxError(line, col, "malformed document");
  }
  auto bad = [](const std::string& what) -> SyntaxError { return SyntaxError(1, 1, what); };
  if (!doc.is_object()) throw bad("top level must be an object");
  ConstraintSystem sys;
  if (doc.contains("variables")) {
    if (!doc["variables"].is_array()) throw bad("variables must be a list of names");
    for (const auto& v : doc["variables"]) {
      if (!v.is_string()) throw bad("variables must be a list of names");
      sys.variables.push_back(v.get<std::string>());
    }
  }
  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array()) throw bad("constraints must be a list");
    for (const auto& row : doc["constraints"]) {
      if (!row.is_object() || !row.contains("coeffs") || !row["coeffs"].is_object())
        throw bad("each constraint needs a coeffs object");
      Constraint c;
      for (const auto& [name, val] : row["coeffs"].items()) {
        if (!val.is_number_integer()) throw bad("coefficient of " + name + " is not an integer");
        if (val.get<long>() != 0) c.coeffs[name] = val.get<long>();
      }
      if (row.contains("constant")) {
        if (!row["constant"].is_number_integer()) throw bad("constant is not an integer");
        c.constant = row["constant"].get<long>();
      }
      std::string rel = row.value("rel", std::string("eq"));
      if (rel == "eq")
        c.rel = Relation::Equal;
      else if (rel == "ge")
        c.rel = Relation::GreaterEqual;
      else if (rel == "gt")
        c.rel = Relation::StrictlyGreater;
      else
        throw bad("unknown relation " + rel);
      sys.constraints.push_back(std::move(c));
    }
  }
  validate(sys);
  return sys;
}

ConstraintSystem parse_input(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_constraints_json(text);
  return parse_constraints(text);
}

std::string render(const Constraint& c, const std::vector<std::string>& order) {
  std::string s;
  for (const auto& v : order) {
    auto it = c.coeffs.find(v);
    if (it == c.coeffs.end() || it->second == 0) continue;
    long a = it->second;
    if (s.empty())
      s += std::to_string(a);
    else
      s += a < 0 ? " - " + std::to_string(-a) : " + " + std::to_string(a);
    s += "*" + v;
  }
  if (s.empty()) s = "0";
  return s + " " + to_string(c.rel) + " " + std::to_string(-c.constant);
}

std::string render(const ConstraintSystem& sys) {
  std::string s = "variables:";
  for (std::size_t i = 0; i < sys.variables.size(); ++i) s += (i ? ", " : " ") + sys.variables[i];
  s += '\n';
  for (const auto& c : sys.constraints) s += render(c, sys.variables) + '\n';
  return s;
}

std::string render_json(const ConstraintSystem& sys) {
  nlohmann::ordered_json doc;
  doc["variables"] = sys.variables;
  doc["constraints"] = nlohmann::ordered_json::array();
  for (const auto& c : sys.constraints) {
    nlohmann::ordered_json row;
    row["coeffs"] = nlohmann::ordered_json::object();
    for (const auto& v : sys.variables) {
      auto it = c.coeffs.find(v);
      if (it != c.coeffs.end()) row["coeffs"][v] = it->second;
    }
    row["constant"] = c.constant;
    row["rel"] = c.rel == Relation::Equal ? "eq" : c.rel == Relation::GreaterEqual ? "ge" : "gt";
    doc["constraints"].push_back(row);
  }
  return doc.dump(2);
}

}  // namespace ldsolve
