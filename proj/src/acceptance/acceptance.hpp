#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace holocorr::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string got;
  std::string tolerance;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> details;
};

struct Options {
  bool quick = false;
  // Derivative under test in the finite-difference criterion.
  oracle::Derivative derivative;
  // Working directory for the determinism criterion; empty: a temp directory.
  std::string scratch_dir;
};

oracle::Derivative library_derivative();
/// Drops the -c term, so it only agrees with the true derivative at c = 0.
oracle::Derivative faulty_derivative();

const std::vector<int>& all_criteria();
/// Criteria that together finish in well under a minute.
const std::vector<int>& quick_criteria();

CriterionResult run_criterion(int id, const Options& opts);

/// One line: status, id, name, expected, got, tolerance, time.
std::string format_line(const CriterionResult& r);
void print_details(std::ostream& os, const CriterionResult& r);

}  // namespace holocorr::acceptance
