/**
 * @file config.hpp
 * @brief Run configuration: a JSON document whose physical keys carry unit
 *        suffixes (_m, _rad_per_s, _m3). See docs/config.md for the schema.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/forces.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Structural problem with a config document: unknown key, missing key, wrong type.
class ConfigSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { SlabForce, Ideal, Density, AtomForce, ZsCompare, Validate };
enum class SweepVariable { D1, D2, Z };
enum class Spacing { Linear, Log };
enum class OutputUnits { SI, Coefficient, Both };
enum class OutputFormat { Csv, Jsonl };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);
std::string to_string(OutputUnits units);
OutputUnits output_units_from_string(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::D2;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 1;
  Spacing spacing = Spacing::Linear;

  /// Sweep values in order; a single point sits at `start`.
  [[nodiscard]] std::vector<double> values() const;
  bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
  OutputUnits units = OutputUnits::Both;
  OutputFormat format = OutputFormat::Csv;
  std::string path;  // empty: standard output
  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  RunMode mode = RunMode::SlabForce;
  CavityConfig cavity;
  std::optional<AtomPolarizability> atom;
  double z = 0.0;  // atom/density distance when no z sweep is given
  MirrorSide density_side = MirrorSide::Mirror2;
  std::optional<SweepSpec> sweep;
  QuadratureSettings quadrature;
  OutputSpec output;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON config. Throws ConfigSchemaError for structural
/// problems and ConfigurationError for physically invalid values.
RunConfig parse_config(const std::string& text);

/// As above, for a caller that already knows the mode (a CLI subcommand): "mode" may be
/// omitted from the document, and a different mode in it is a schema error.
RunConfig parse_config(const std::string& text, RunMode mode);

/// Canonical JSON rendering; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

}  // namespace casimir
