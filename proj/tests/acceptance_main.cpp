#include <cstdio>
#include <string>

#include "xkit/acceptance.hpp"
#include "xkit/enumerate.hpp"

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  const auto report = xkit::run_acceptance(suite, xkit::default_bound());
  for (const auto& r : report.criteria) std::printf("%s\n", xkit::format_line(r).c_str());
  std::printf("%s: %zu criteria\n", report.ok() ? "ALL PASS" : "SOME FAILED", report.criteria.size());
  return report.ok() ? 0 : 1;
}
