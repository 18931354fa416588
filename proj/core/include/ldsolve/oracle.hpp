#pragma once

#include <string>
#include <vector>

#include "ldsolve/basis.hpp"
#include "ldsolve/dioph.hpp"

namespace ldsolve {

struct Mismatch {
  ExponentVector point;
  bool expected_in = false;  // by the brute-force ground truth
  bool actually_in = false;  // by the object under test
  Rational coefficient = 0;  // series coefficient at the point, when relevant
  std::string reason;
};

struct EnumerationReport {
  std::vector<ExponentVector> solutions;
  long bound = 0;
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

bool satisfies(const ConstraintSystem& sys, const ExponentVector& point);

// Points of [0,B]^k satisfying every row, in CanonicalLess order.
std::vector<ExponentVector> brute_solutions(const ConstraintSystem& sys, long B);
// Points of total degree <= D satisfying every row.
std::vector<ExponentVector> ball_solutions(const ConstraintSystem& sys, long D);

// Compares the support of chi truncated at total degree D with the brute
// force solutions of that degree; every coefficient on the support must be 1.
EnumerationReport check_series(const NiceRational& chi, const ConstraintSystem& sys, long D);

struct BasisCheckOptions {
  long bound = 10;
  int depth = 20;
};

EnumerationReport check_basis(const SolutionBasis& basis, const ConstraintSystem& sys,
                              const BasisCheckOptions& opts = {});

std::string render_report(const EnumerationReport& r, const std::vector<std::string>& vars);
std::string render_report_json(const EnumerationReport& r, const std::vector<std::string>& vars);

}  // namespace ldsolve
