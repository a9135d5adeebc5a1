#pragma once

// The acceptance suite: eight criteria, each a deterministic computation with
// its tolerances fixed here. Shared by the acceptance test binary and
// `sasaki verify`.

#include <string>
#include <vector>

namespace sasaki::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Criterion ids named by `suite`: "all", a criterion number, or one of
/// riccati, detb, conjugate, geodesics, cut, bishop, laplacian, comparison;
/// several may be joined with commas.
std::vector<int> parse_suite(const std::string& suite);

std::string criterion_name(int id);

CriterionResult run_criterion(int id);

std::vector<CriterionResult> run(const std::vector<int>& ids);

/// "PASS [1] riccati: ..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace sasaki::acceptance
