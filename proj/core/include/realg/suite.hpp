#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace realg {

struct Check {
  std::string name;
  bool ok = true;
  std::string witness;  // set iff !ok
  long long checked = 0;
  double seconds = 0;
};

struct SuiteOptions {
  bool full = true;
  std::uint64_t seed = 0;
  std::string fixture_dir;  // holds par.sexp, tens.sexp, lambda.sexp, witnesses/
  int jobs = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  bool ok() const;
};

constexpr int criterion_count = 10;
std::string criterion_title(int id);

// Criteria are numbered 1..10. Exceptions from the library become failing
// checks.
CriterionResult run_criterion(int id, const SuiteOptions& opt);
// Runs the criteria on `jobs` threads; results come back in id order.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt, const std::vector<int>& ids = {});

}  // namespace realg
