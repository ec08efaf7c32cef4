/**
 * @file validation.hpp
 * @brief The acceptance suite: closed-form limits, asymptotic regimes,
 *        scaling exponents and internal consistency checks, each with an
 *        explicit tolerance.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace casimir {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // relative unless the detail says otherwise
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Overrides the default quadrature rel_tol (1e-8) for every criterion.
  std::optional<double> rel_tol;
  /// Run only these criteria (1-based ids); empty runs all.
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& options = {});

/// One line: "[PASS] 3 title: measured=... expected=... tol=... (detail) [t s]".
std::string format_criterion(const CriterionResult& result);

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace casimir
