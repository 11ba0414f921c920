#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace xkit {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CriterionResult> criteria;
  bool ok() const;
};

// "all" plus one name per criterion: groupoid, xmod, fcm, fox, diagram, dg, cube, tensor, crs.
std::vector<std::string> suite_names();
// Throws unknown_suite.
SuiteReport run_acceptance(const std::string& suite, std::size_t bound);

// "PASS  6  double groupoid laws  21.4 s (limit 60 s)  detail"
std::string format_line(const CriterionResult& r);

}  // namespace xkit
