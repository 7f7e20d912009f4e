// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <filesystem>

#include "weingarten/suite.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path figures = argc > 1 ? argv[1] : "acceptance_figures";
  const auto results = weingarten::suite::run_acceptance(figures);
  std::fputs(weingarten::suite::format_table(results).c_str(), stdout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
