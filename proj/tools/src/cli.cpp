#include "ldsolve/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldsolve/basis.hpp"
#include "ldsolve/dioph.hpp"
#include "ldsolve/errors.hpp"
#include "ldsolve/oracle.hpp"

namespace ldsolve::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFooter =
    "Defaults: engine xin, no cross-check, text output, step ceiling 1000000 per constraint.\n"
    "Exit status: 0 success, 1 verification mismatch or engine disagreement, 2 error.";

struct Settings {
  std::string input;
  std::string text;
  std::string engine = "xin";
  bool check = false;
  std::string format = "text";
  std::size_t steps = kDefaultStepCeiling;
  int verbosity = 0;

  long degree = 10;
  long check_degree = 20;
  bool brute = false;
  std::vector<long> rhs;
  bool list = false;
  std::vector<std::string> weights;
  std::string tracker;
  std::vector<std::string> slices;
  bool basis = false;
  long box = 10;
  int depth = 20;
};

struct Context {
  const Settings& s;
  const std::string& stdin_text;
  std::ostringstream out;
  std::ostringstream err;
  int status = kOk;

  bool json() const { return s.format == "json"; }
};

void add_common(CLI::App* sub, Settings& s) {
  sub->add_option("input", s.input, "Constraint file, or - for standard input");
  sub->add_option("-e,--text", s.text, "Constraint system given inline");
  sub->add_option("--engine", s.engine, "Constant-term engine")
      ->check(CLI::IsMember({"xin", "elliott"}))
      ->capture_default_str();
  sub->add_flag("--check", s.check, "Cross-check the series with the other engine");
  sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  sub->add_option("--steps", s.steps, "Engine step ceiling per constraint")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("-v,--verbose", s.verbosity, "Trace intermediate series on standard error");
}

ConstraintSystem load(Context& ctx) {
  std::string text;
  if (!ctx.s.text.empty()) {
    if (!ctx.s.input.empty()) throw std::invalid_argument("give either an input file or --text, not both");
    text = ctx.s.text;
  } else if (ctx.s.input == "-") {
    text = ctx.stdin_text;
  } else if (!ctx.s.input.empty()) {
    std::ifstream in(ctx.s.input);
    if (!in) throw std::invalid_argument("cannot read " + ctx.s.input);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    throw std::invalid_argument("no input: pass a file, - or --text");
  }
  ConstraintSystem sys = parse_input(text);
  validate(sys);
  if (sys.variables.empty()) throw std::invalid_argument("the system declares no variables");
  return sys;
}

Engine engine_of(const std::string& name) { return name == "elliott" ? Engine::Elliott : Engine::Xin; }

const char* engine_name(Engine e) { return e == Engine::Elliott ? "elliott" : "xin"; }

// The series from the chosen engine; with --check the other engine must agree.
NiceRational solve(Context& ctx, const ConstraintSystem& sys, Json* doc = nullptr) {
  SolveOptions opts;
  opts.engine = engine_of(ctx.s.engine);
  opts.step_ceiling = ctx.s.steps;
  opts.verbosity = ctx.s.verbosity;
  opts.trace = &ctx.err;
  NiceRational chi = characteristic_series(sys, opts);
  if (doc) (*doc)["engine"] = engine_name(opts.engine);
  if (!ctx.s.check) return chi;
  opts.engine = opts.engine == Engine::Xin ? Engine::Elliott : Engine::Xin;
  NiceRational other = characteristic_series(sys, opts);
  bool agree = rf_equal(chi, other);
  if (doc) (*doc)["engines_agree"] = agree;
  if (!agree) {
    ctx.err << "engines disagree: " << engine_name(opts.engine) << " gives " << render(other) << '\n';
    ctx.status = kMismatch;
  }
  return chi;
}

Json tuple_json(const ExponentVector& m, const std::vector<std::string>& vars) {
  Json a = Json::array();
  for (const auto& v : vars) a.push_back(m.get(v));
  return a;
}

Json tuples_json(const std::vector<ExponentVector>& ms, const std::vector<std::string>& vars) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(tuple_json(m, vars));
  return a;
}

std::string header(const std::vector<std::string>& vars) {
  std::string s = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
  return s + ")";
}

std::string render_family(const SolutionFamily& f, const std::vector<std::string>& vars) {
  std::string s = render_tuple(f.offset, vars);
  for (std::size_t i = 0; i < f.generators.size(); ++i)
    s += " + c" + std::to_string(i + 1) + "*" + render_tuple(f.generators[i], vars);
  return s;
}

Json integer_json(const mpz_class& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

// ---------------------------------------------------------------- commands

void cmd_series(Context& ctx) {
  ConstraintSystem sys = load(ctx);
  Json doc;
  doc["variables"] = sys.variables;
  NiceRational chi = solve(ctx, sys, &doc);
  if (!ctx.json()) {
    ctx.out << render(chi) << '\n';
    return;
  }
  doc["series"] = render(chi);
  ctx.out << doc.dump(2) << '\n';
}

void cmd_basis(Context& ctx) {
  ConstraintSystem sys = load(ctx);
  const auto& vars = sys.variables;
  NormalizedSystem norm = normalize_system(sys);
  Homogenized hom = homogenize(norm.system);
  std::vector<ExponentVector> minimal;
  std::optional<std::vector<ExponentVector>> generators;
  if (norm.infeasible) {
    // no solutions at all
  } else if (!hom.u) {
    minimal = hilbert_basis(norm.system).minimal;
  } else {
    // Basis elements at u = 1 are the minimal solutions of the original
    // system; those at u = 0 generate its homogeneous part.
    generators.emplace();
    for (const auto& b : hilbert_basis(hom.system).minimal) {
      long level = b.get(*hom.u);
      if (level == 1) minimal.push_back(b.without(*hom.u));
      if (level == 0) generators->push_back(b);
    }
  }
  Json doc;
  doc["variables"] = vars;
  auto families = parametric_form(solve(ctx, sys, &doc));

  if (ctx.json()) {
    doc["minimal"] = tuples_json(minimal, vars);
    if (generators) doc["generators"] = tuples_json(*generators, vars);
    if (families) {
      Json fs = Json::array();
      for (const auto& f : *families)
        fs.push_back(Json{{"offset", tuple_json(f.offset, vars)}, {"generators", tuples_json(f.generators, vars)}});
      doc["families"] = fs;
    } else {
      doc["families"] = nullptr;
    }
    ctx.out << doc.dump(2) << '\n';
    return;
  }
  ctx.out << "minimal solutions " << header(vars) << ":\n";
  for (const auto& m : minimal) ctx.out << render_tuple(m, vars) << '\n';
  if (generators) {
    ctx.out << "homogeneous generators:\n";
    for (const auto& g : *generators) ctx.out << render_tuple(g, vars) << '\n';
  }
  if (families) {
    ctx.out << "families:\n";
    for (const auto& f : *families) ctx.out << render_family(f, vars) << '\n';
  } else {
    ctx.out << "families: not available (numerator not multiplicity-free)\n";
  }
}

void cmd_enumerate(Context& ctx) {
  ConstraintSystem sys = load(ctx);
  const auto& vars = sys.variables;
  std::vector<ExponentVector> points;
  if (ctx.s.brute) {
    points = ball_solutions(sys, ctx.s.degree);
  } else {
    LaurentPolynomial e = expand_truncated(solve(ctx, sys), VarSet(vars.begin(), vars.end()), ctx.s.degree);
    for (const auto& [m, c] : e.terms()) {
      if (c != 1) {
        ctx.err << "coefficient " << render_rational(c) << " at " << render_tuple(m, vars) << '\n';
        ctx.status = kMismatch;
      }
      points.push_back(m);
    }
    std::sort(points.begin(), points.end(), CanonicalLess{});
  }
  if (ctx.json()) {
    Json doc;
    doc["variables"] = vars;
    doc["degree"] = ctx.s.degree;
    doc["solutions"] = tuples_json(points, vars);
    ctx.out << doc.dump(2) << '\n';
    return;
  }
  ctx.out << points.size() << " solutions " << header(vars) << " of total degree <= " << ctx.s.degree << ":\n";
  for (const auto& p : points) ctx.out << render_tuple(p, vars) << '\n';
}

void cmd_count(Context& ctx) {
  ConstraintSystem sys = load(ctx);
  const auto& vars = sys.variables;
  std::vector<long> rhs = ctx.s.rhs.empty() ? rhs_of(sys) : ctx.s.rhs;
  // The right-hand side comes from --rhs, so the file constants are dropped.
  ConstraintSystem eqs = sys;
  for (auto& c : eqs.constraints) c.constant = 0;
  mpz_class n = euler_count(eqs, rhs);
  std::vector<ExponentVector> sols;
  if (ctx.s.list) sols = euler_solutions(eqs, rhs);
  if (ctx.json()) {
    Json doc;
    doc["variables"] = vars;
    doc["rhs"] = rhs;
    doc["count"] = integer_json(n);
    if (ctx.s.list) doc["solutions"] = tuples_json(sols, vars);
    ctx.out << doc.dump(2) << '\n';
    return;
  }
  ctx.out << n.get_str() << '\n';
  for (const auto& s : sols) ctx.out << render_tuple(s, vars) << '\n';
}

std::map<std::string, long> parse_weights(const std::vector<std::string>& items, const ConstraintSystem& sys) {
  std::map<std::string, long> w;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("weight " + item + " is not of the form var=int");
    std::string v = item.substr(0, eq);
    if (std::find(sys.variables.begin(), sys.variables.end(), v) == sys.variables.end())
      throw Error(ErrorKind::UnknownVariable, "weight for undeclared variable " + v);
    std::size_t used = 0;
    long value = std::stol(item.substr(eq + 1), &used);
    if (used != item.size() - eq - 1) throw std::invalid_argument("weight " + item + " is not an integer");
    w[v] = value;
  }
  return w;
}

std::vector<long> parse_slices(const std::vector<std::string>& items) {
  std::vector<long> ks;
  for (const auto& item : items) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      ks.push_back(std::stol(item));
      continue;
    }
    long lo = std::stol(item.substr(0, dots));
    long hi = std::stol(item.substr(dots + 2));
    for (long k = lo; k <= hi; ++k) ks.push_back(k);
  }
  return ks;
}

void cmd_weight(Context& ctx) {
  ConstraintSystem sys = load(ctx);
  auto weights = parse_weights(ctx.s.weights, sys);
  std::string tracker = ctx.s.tracker.empty() ? fresh_name("t", sys.variables) : ctx.s.tracker;
  if (std::find(sys.variables.begin(), sys.variables.end(), tracker) != sys.variables.end())
    throw std::invalid_argument("tracker " + tracker + " clashes with a system variable");
  NiceRational omega = weight_substitution(solve(ctx, sys), weights, tracker);
  std::vector<std::pair<long, NiceRational>> slices;
  for (long k : parse_slices(ctx.s.slices)) slices.emplace_back(k, weight_slice(omega, tracker, k));
  if (ctx.json()) {
    Json doc;
    doc["tracker"] = tracker;
    doc["omega"] = render(omega);
    Json arr = Json::array();
    for (const auto& [k, f] : slices) arr.push_back(Json{{"k", k}, {"series", render(f)}});
    doc["slices"] = arr;
    ctx.out << doc.dump(2) << '\n';
    return;
  }
  ctx.out << "omega: " << render(omega) << '\n';
  for (const auto& [k, f] : slices) ctx.out << tracker << "^" << k << ": " << render(f) << '\n';
}

void cmd_verify(Context& ctx) {
  ConstraintSystem sys = load(ctx);
  const auto& vars = sys.variables;
  Json doc;
  EnumerationReport series = check_series(solve(ctx, sys, &doc), sys, ctx.s.check_degree);
  std::optional<EnumerationReport> basis;
  if (ctx.s.basis) {
    NormalizedSystem norm = normalize_system(sys);
    if (homogenize(norm.system).u)
      throw Error(ErrorKind::HypothesisViolated, "--basis needs a homogeneous system");
    basis = check_basis(hilbert_basis(norm.system), sys, BasisCheckOptions{ctx.s.box, ctx.s.depth});
  }
  if (!series.ok() || (basis && !basis->ok())) ctx.status = kMismatch;
  if (ctx.json()) {
    doc["series"] = Json::parse(render_report_json(series, vars));
    if (basis) doc["basis"] = Json::parse(render_report_json(*basis, vars));
    ctx.out << doc.dump(2) << '\n';
    return;
  }
  ctx.out << "series check, degree <= " << ctx.s.check_degree << '\n' << render_report(series, vars);
  if (basis) ctx.out << "basis check, box [0," << ctx.s.box << "]\n" << render_report(*basis, vars);
}

}  // namespace

Outcome run(const std::vector<std::string>& args, const std::string& stdin_text) {
  Settings s;
  CLI::App app{"Solve linear Diophantine systems through characteristic series", "ldsolve"};
  app.footer(kFooter);
  app.require_subcommand(1);

  auto* series = app.add_subcommand("series", "Print the characteristic series");
  auto* basis = app.add_subcommand("basis", "Print minimal solutions and parametric families");
  auto* enumerate = app.add_subcommand("enumerate", "List solutions up to a total degree");
  auto* count = app.add_subcommand("count", "Count solutions of an equation system with nonnegative coefficients");
  auto* weight = app.add_subcommand("weight", "Weight the series by a linear form and extract slices");
  auto* verify = app.add_subcommand("verify", "Check the series (and optionally the basis) against brute force");
  for (auto* sub : {series, basis, enumerate, count, weight, verify}) add_common(sub, s);

  enumerate->add_option("-D,--degree", s.degree, "Total-degree bound")->check(CLI::NonNegativeNumber)->capture_default_str();
  enumerate->add_flag("--brute", s.brute, "Enumerate by brute force instead of expanding the series");
  count->add_option("--rhs", s.rhs, "Right-hand sides, comma separated (default: the file constants)")->delimiter(',');
  count->add_flag("--list", s.list, "Also list the solutions");
  weight->add_option("-w,--weights", s.weights, "Weights as var=int, comma separated")->delimiter(',')->required();
  weight->add_option("--tracker", s.tracker, "Name of the weight variable (default: a fresh t)");
  weight->add_option("-k,--slice", s.slices, "Slices to extract: k or lo..hi, comma separated")->delimiter(',');
  verify->add_option("-D,--degree", s.check_degree, "Total-degree bound for the series check")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_flag("--basis", s.basis, "Also check the Hilbert basis (homogeneous systems)");
  verify->add_option("-B,--box", s.box, "Box bound for the basis check")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--depth", s.depth, "Depth of the decomposition search")->check(CLI::PositiveNumber)->capture_default_str();

  Outcome result;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.status = code == 0 ? kOk : kFailure;
    return result;
  }

  Context ctx{s, stdin_text, {}, {}, kOk};
  try {
    if (series->parsed()) cmd_series(ctx);
    if (basis->parsed()) cmd_basis(ctx);
    if (enumerate->parsed()) cmd_enumerate(ctx);
    if (count->parsed()) cmd_count(ctx);
    if (weight->parsed()) cmd_weight(ctx);
    if (verify->parsed()) cmd_verify(ctx);
    result.status = ctx.status;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    result.status = kFailure;
    ctx.out.str("");
  }
  result.out = ctx.out.str();
  result.err = ctx.err.str();
  return result;
}

}  // namespace ldsolve::cli
