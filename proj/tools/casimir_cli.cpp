// Command-line front end: one subcommand per run mode.
//
// Exit codes: 0 ok, 1 validation failure, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/sweep.hpp"
#include "casimir/validation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

struct Options {
  std::string config_path;
  std::string output_path;
  std::optional<double> rel_tol;
  std::optional<std::string> units;
  std::optional<std::string> format;
  unsigned threads = 1;
  std::vector<int> only;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw casimir::ConfigurationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_mode(casimir::RunMode mode, const Options& opt) {
  casimir::RunConfig config = casimir::parse_config(read_file(opt.config_path), mode);
  if (opt.rel_tol) {
    config.quadrature.rel_tol = *opt.rel_tol;
    config.quadrature.validate();
  }
  if (opt.units) config.output.units = casimir::output_units_from_string(*opt.units);
  if (opt.format) config.output.format = *opt.format == "jsonl" ? casimir::OutputFormat::Jsonl : casimir::OutputFormat::Csv;
  if (!opt.output_path.empty()) config.output.path = opt.output_path;

  const casimir::SweepTable table = casimir::run_sweep(config, opt.threads);

  std::ofstream file;
  if (!config.output.path.empty()) {
    file.open(config.output.path);
    if (!file) throw casimir::ConfigurationError("cannot write output file '" + config.output.path + "'");
  }
  std::ostream& out = config.output.path.empty() ? std::cout : file;
  if (config.output.format == casimir::OutputFormat::Jsonl)
    casimir::write_jsonl(out, table, config);
  else
    casimir::write_csv(out, table, config);

  if (!table.all_ok()) {
    for (const auto& row : table.rows)
      if (!row.ok()) std::cerr << table.variable << "=" << row.x << ": " << row.status << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

int run_validate(const Options& opt) {
  casimir::AcceptanceOptions options;
  options.rel_tol = opt.rel_tol;
  options.only = opt.only;
  if (opt.rel_tol) {
    casimir::QuadratureSettings check;
    check.rel_tol = *opt.rel_tol;
    check.validate();
  }
  std::ofstream file;
  if (!opt.output_path.empty()) {
    file.open(opt.output_path);
    if (!file) throw casimir::ConfigurationError("cannot write output file '" + opt.output_path + "'");
  }
  std::ostream& out = opt.output_path.empty() ? std::cout : file;
  const auto results = casimir::run_acceptance_suite(options);
  int failed = 0;
  for (const auto& r : results) {
    out << casimir::format_criterion(r) << std::endl;
    if (!r.passed) ++failed;
  }
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " criteria passed"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) + " criteria failed")
      << std::endl;
  return failed == 0 ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir forces on a slab in a magnetodielectric cavity, medium force densities and atom-mirror forces"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> modes = {
      {"slab-force", "force on the slab, split into the screened and medium-assisted parts"},
      {"ideal", "closed forms for ideal conductive/permeable slab and mirrors"},
      {"density", "force density on the cavity medium"},
      {"atom-force", "force on an atom in front of a mirror (full, nonretarded, far)"},
      {"zs-compare", "atom force next to the Zhou-Spruch form"},
  };
  for (const auto& [name, description] : modes) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", opt.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", opt.output_path, "output file (default: standard output)");
    sub->add_option("--rel-tol", opt.rel_tol, "quadrature relative tolerance");
    sub->add_option("--units", opt.units, "si, coef or both")->check(CLI::IsMember({"si", "coef", "both"}));
    sub->add_option("--format", opt.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--threads", opt.threads, "worker threads for sweep points")->check(CLI::PositiveNumber);
  }
  CLI::App* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--output", opt.output_path, "report file (default: standard output)");
  validate->add_option("--rel-tol", opt.rel_tol, "quadrature relative tolerance for every criterion");
  validate->add_option("--only", opt.only, "criterion ids to run")->check(CLI::Range(1, 11));
  validate->add_option("--config", opt.config_path, "ignored; accepted for symmetry with the other subcommands");
  validate->add_option("--threads", opt.threads, "ignored; criteria run sequentially");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (validate->parsed()) return run_validate(opt);
    for (const auto& [name, description] : modes)
      if (app.got_subcommand(name)) return run_mode(casimir::run_mode_from_string(name), opt);
  } catch (const casimir::ConfigSchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {  // ConfigurationError and settings validation
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kConfigError;
}
