/**
 * @file sweep.hpp
 * @brief Evaluates a RunConfig over its sweep points and writes the result
 *        as CSV (with a commented header block) or JSON lines.
 */
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/config.hpp"

namespace casimir {

struct SweepRow {
  double x = 0.0;              // swept distance in m
  std::vector<double> values;  // one per SweepTable::columns; NaN when unavailable
  bool converged = true;
  std::string status = "ok";   // "ok", "unconverged", or "error: ..."

  [[nodiscard]] bool ok() const { return status == "ok"; }
};

struct SweepTable {
  std::string variable;              // "d1_m", "d2_m" or "z_m"
  std::vector<std::string> columns;  // value columns, unit suffix included
  std::vector<SweepRow> rows;        // in sweep order

  [[nodiscard]] bool all_ok() const;
  /// Column index by name; throws std::out_of_range when absent.
  [[nodiscard]] std::size_t column(const std::string& name) const;
};

/// Runs every sweep point (a single point when no sweep is configured).
/// Points are spread over `threads` workers; rows always come back in sweep order.
/// Per-point numerical failures are recorded in the row; configuration errors throw.
SweepTable run_sweep(const RunConfig& config, unsigned threads = 1);

/// FNV-1a 64-bit hash of the canonical config rendering.
std::uint64_t config_hash(const RunConfig& config);

void write_csv(std::ostream& out, const SweepTable& table, const RunConfig& config);
void write_jsonl(std::ostream& out, const SweepTable& table, const RunConfig& config);

}  // namespace casimir
