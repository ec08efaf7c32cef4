#include <cstdio>
#include <cstdlib>
#include <string>

#include "casimir/validation.hpp"

int main(int argc, char** argv) {
  casimir::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  const auto results = casimir::run_acceptance_suite(options);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", casimir::format_criterion(r).c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
