#include "casimir/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/forces.hpp"
#include "casimir/ideal.hpp"

namespace casimir {
namespace {

constexpr double hbar_c = constants::hbar * constants::speed_of_light;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One physical quantity, reported in SI and/or as a dimensionless coefficient.
struct Quantity {
  std::string name;
  double si = kNaN;
  double coefficient = kNaN;
};

struct PointResult {
  std::vector<Quantity> quantities;
  bool converged = true;
};

bool wants_si(const RunConfig& c) { return c.output.units != OutputUnits::Coefficient; }
bool wants_coefficient(const RunConfig& c) { return c.output.units != OutputUnits::SI; }

std::string variable_name(const RunConfig& config) {
  if (config.sweep) {
    switch (config.sweep->variable) {
      case SweepVariable::D1:
        return "d1_m";
      case SweepVariable::D2:
        return "d2_m";
      case SweepVariable::Z:
        return "z_m";
    }
  }
  return config.mode == RunMode::SlabForce || config.mode == RunMode::Ideal ? "d2_m" : "z_m";
}

std::vector<double> sweep_points(const RunConfig& config) {
  if (config.sweep) return config.sweep->values();
  if (config.mode == RunMode::SlabForce || config.mode == RunMode::Ideal) return {config.cavity.d2};
  return {config.z};
}

RunConfig at_point(const RunConfig& base, double x) {
  RunConfig c = base;
  const SweepVariable v = base.sweep ? base.sweep->variable
                                     : (base.mode == RunMode::SlabForce || base.mode == RunMode::Ideal
                                            ? SweepVariable::D2
                                            : SweepVariable::Z);
  switch (v) {
    case SweepVariable::D1:
      c.cavity.d1 = x;
      break;
    case SweepVariable::D2:
      c.cavity.d2 = x;
      break;
    case SweepVariable::Z:
      c.z = x;
      break;
  }
  return c;
}

IdealBody body_of(const MirrorSpec& m) {
  return m.kind() == MirrorSpec::Kind::IdealConductive ? IdealBody::Conductive : IdealBody::Permeable;
}

IdealBody body_of(const SlabSpec& s) {
  return s.kind() == SlabSpec::Kind::IdealConductive ? IdealBody::Conductive : IdealBody::Permeable;
}

/// Mode-level checks that do not depend on the sweep point.
void check_mode_requirements(const RunConfig& config) {
  const CavityConfig& cavity = config.cavity;
  switch (config.mode) {
    case RunMode::Ideal:
      if (!cavity.slab.is_ideal() || !cavity.mirror2.is_ideal() || (!cavity.semi_infinite && !cavity.mirror1.is_ideal()))
        throw ConfigurationError("ideal mode needs ideal mirrors and an ideal slab");
      try {
        (void)cavity.medium.static_values();
      } catch (const StaticLimitError&) {
        throw ConfigurationError("ideal mode needs a cavity medium with finite static eps0 and mu0");
      }
      break;
    case RunMode::Density:
      if (!cavity.semi_infinite &&
          !(cavity.slab.kind() == SlabSpec::Kind::Real && cavity.slab.material() == cavity.medium))
        throw ConfigurationError("density mode in a finite cavity needs a real slab made of the cavity medium");
      break;
    case RunMode::AtomForce:
    case RunMode::ZsCompare:
      if (!config.atom) throw ConfigurationError("mode " + to_string(config.mode) + " needs an atom");
      break;
    case RunMode::SlabForce:
      break;
    case RunMode::Validate:
      throw ConfigurationError("validate mode has no sweep");
  }
}

void add_polarized(std::vector<Quantity>& q, const std::string& name, const PolarizedIntegral& p, double to_coef) {
  q.push_back({name, p.value(), p.value() * to_coef});
  q.push_back({name + "_tm", p.tm.value, p.tm.value * to_coef});
  q.push_back({name + "_te", p.te.value, p.te.value * to_coef});
  q.push_back({name + "_err", p.error(), p.error() * to_coef});
}

PointResult slab_force_point(const RunConfig& c) {
  const ForceBreakdown b = force_split(c.cavity, c.quadrature);
  const double to_coef = b.coefficient(1.0);
  PointResult r;
  r.quantities.push_back({"f", b.total(), b.coefficient(b.total())});
  r.quantities.push_back({"f_err", b.total_error(), b.coefficient(b.total_error())});
  add_polarized(r.quantities, "f1", b.f1, to_coef);
  add_polarized(r.quantities, "f2", b.f2, to_coef);
  r.converged = b.converged();
  return r;
}

PointResult ideal_point(const RunConfig& c) {
  const CavityConfig& cavity = c.cavity;
  const StaticValues sv = cavity.medium.static_values();
  const IdealConfigTag tag2{body_of(cavity.slab), body_of(cavity.mirror2)};
  double f1 = ideal_f1(cavity.d2, tag2, sv.eps0, sv.mu0);
  double f2 = ideal_f2(cavity.d2, tag2, sv.eps0, sv.mu0);
  if (!cavity.semi_infinite) {
    const IdealConfigTag tag1{body_of(cavity.slab), body_of(cavity.mirror1)};
    f1 -= ideal_f1(cavity.d1, tag1, sv.eps0, sv.mu0);
    f2 -= ideal_f2(cavity.d1, tag1, sv.eps0, sv.mu0);
  }
  const double to_coef = std::pow(cavity.reference_distance(), 4) / hbar_c;
  PointResult r;
  r.quantities.push_back({"f", f1 + f2, (f1 + f2) * to_coef});
  r.quantities.push_back({"f1", f1, f1 * to_coef});
  r.quantities.push_back({"f2", f2, f2 * to_coef});
  return r;
}

PointResult density_point(const RunConfig& c) {
  const IntegralResult d =
      c.cavity.semi_infinite
          ? medium_force_density(c.cavity.mirror2, c.cavity.medium, c.z, c.quadrature)
          : medium_force_density(c.cavity, c.density_side, c.z, c.quadrature);
  const double to_coef = std::pow(c.z, 5) / hbar_c;
  PointResult r;
  r.quantities.push_back({"density", d.value, d.value * to_coef});
  r.quantities.push_back({"density_err", d.error_estimate, d.error_estimate * to_coef});
  r.converged = d.converged;
  return r;
}

void add_atom(PointResult& r, const std::string& name, const AtomForceResult& a, double to_coef) {
  r.quantities.push_back({name, a.value, a.value * to_coef});
  r.quantities.push_back({name + "_err", a.error_estimate, a.error_estimate * to_coef});
  r.converged = r.converged && a.converged;
}

void add_missing(PointResult& r, const std::string& name) {
  r.quantities.push_back({name, kNaN, kNaN});
  r.quantities.push_back({name + "_err", kNaN, kNaN});
}

PointResult atom_point(const RunConfig& c) {
  const MirrorSpec& mirror = c.cavity.mirror2;
  const Material& medium = c.cavity.medium;
  const AtomPolarizability& atom = *c.atom;
  const double to_coef = std::pow(c.z, 5) / (hbar_c * atom.static_value());
  PointResult r;
  add_atom(r, "f_full", atom_force_full(c.z, mirror, medium, atom, c.quadrature), to_coef);
  try {
    add_atom(r, "f_nonretarded", atom_force_nonretarded(c.z, mirror, medium, atom, c.quadrature), to_coef);
  } catch (const NumericalDomainError&) {
    add_missing(r, "f_nonretarded");
  }
  try {
    add_atom(r, "f_far", atom_force_far(c.z, mirror, medium, atom, c.quadrature), to_coef);
  } catch (const StaticLimitError&) {
    add_missing(r, "f_far");
  }
  return r;
}

PointResult zs_point(const RunConfig& c) {
  const MirrorSpec& mirror = c.cavity.mirror2;
  const Material& medium = c.cavity.medium;
  const AtomPolarizability& atom = *c.atom;
  const double to_coef = std::pow(c.z, 5) / (hbar_c * atom.static_value());
  const AtomForceResult ours = atom_force_full(c.z, mirror, medium, atom, c.quadrature);
  const AtomForceResult zs = zs_atom_force(c.z, mirror, medium, atom, ZsRegime::Full, c.quadrature);
  PointResult r;
  add_atom(r, "f_this", ours, to_coef);
  add_atom(r, "f_zs", zs, to_coef);
  const double ratio = ours.value / zs.value;
  r.quantities.push_back({"ratio", ratio, ratio});
  return r;
}

PointResult evaluate_point(const RunConfig& c) {
  switch (c.mode) {
    case RunMode::SlabForce:
      return slab_force_point(c);
    case RunMode::Ideal:
      return ideal_point(c);
    case RunMode::Density:
      return density_point(c);
    case RunMode::AtomForce:
      return atom_point(c);
    case RunMode::ZsCompare:
      return zs_point(c);
    case RunMode::Validate:
      break;
  }
  throw std::logic_error("no sweep for mode " + to_string(c.mode));
}

/// Column names for a mode, from a representative (possibly failed) point.
std::vector<std::string> column_names(const RunConfig& config, const std::vector<Quantity>& quantities) {
  std::vector<std::string> names;
  const std::string si_unit = config.mode == RunMode::SlabForce || config.mode == RunMode::Ideal ? "_Pa"
                              : config.mode == RunMode::Density                                 ? "_N_per_m3"
                                                                                                : "_N";
  for (const auto& q : quantities) {
    if (q.name == "ratio") {
      names.push_back("ratio");
      continue;
    }
    if (wants_si(config)) names.push_back(q.name + si_unit);
    if (wants_coefficient(config)) names.push_back(q.name + "_coef");
  }
  return names;
}

std::vector<double> row_values(const RunConfig& config, const std::vector<Quantity>& quantities) {
  std::vector<double> v;
  for (const auto& q : quantities) {
    if (q.name == "ratio") {
      v.push_back(q.si);
      continue;
    }
    if (wants_si(config)) v.push_back(q.si);
    if (wants_coefficient(config)) v.push_back(q.coefficient);
  }
  return v;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string units_note(const RunConfig& config) {
  switch (config.mode) {
    case RunMode::SlabForce:
    case RunMode::Ideal:
      return "force per area in Pa, positive toward mirror 2; coef = f d_ref^4/(hbar c), d_ref = " +
             std::string(config.cavity.semi_infinite ? "d2" : "min(d1, d2)");
    case RunMode::Density:
      return "force density in N/m^3, positive = attraction to the mirror; coef = f z^5/(hbar c)";
    case RunMode::AtomForce:
    case RunMode::ZsCompare:
      return "atom force in N, positive = attraction to the mirror; coef = f z^5/(hbar c alpha0), alpha0 in m^3";
    case RunMode::Validate:
      break;
  }
  return "";
}

}  // namespace

bool SweepTable::all_ok() const {
  for (const auto& r : rows)
    if (!r.ok()) return false;
  return true;
}

std::size_t SweepTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column '" + name + "'");
}

SweepTable run_sweep(const RunConfig& config, unsigned threads) {
  check_mode_requirements(config);
  config.quadrature.validate();
  const std::vector<double> xs = sweep_points(config);

  struct Slot {
    PointResult result;
    std::string error;
  };
  std::vector<Slot> slots(xs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      const RunConfig point = at_point(config, xs[i]);
      try {
        point.cavity.validate();
        slots[i].result = evaluate_point(point);
      } catch (const ConfigurationError& e) {
        slots[i].error = std::string("error: ") + e.what();
      } catch (const std::runtime_error& e) {  // degenerate denominator
        slots[i].error = std::string("error: ") + e.what();
      } catch (const std::domain_error& e) {  // static limit, numerical domain
        slots[i].error = std::string("error: ") + e.what();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(xs.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepTable table;
  table.variable = variable_name(config);
  const std::vector<Quantity>* layout = nullptr;
  for (const auto& s : slots)
    if (s.error.empty()) {
      layout = &s.result.quantities;
      break;
    }
  if (layout) table.columns = column_names(config, *layout);

  for (std::size_t i = 0; i < xs.size(); ++i) {
    SweepRow row;
    row.x = xs[i];
    if (slots[i].error.empty()) {
      row.values = row_values(config, slots[i].result.quantities);
      row.converged = slots[i].result.converged;
      row.status = row.converged ? "ok" : "unconverged";
    } else {
      row.values.assign(table.columns.size(), kNaN);
      row.converged = false;
      row.status = slots[i].error;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::uint64_t config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : render_config(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

void write_csv(std::ostream& out, const SweepTable& table, const RunConfig& config) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(config)));
  out << "# casimir " << to_string(config.mode) << "\n";
  out << "# config_hash: fnv1a64:" << hash << "\n";
  out << "# quadrature: rel_tol=" << format_number(config.quadrature.rel_tol)
      << " abs_tol=" << format_number(config.quadrature.abs_tol)
      << " max_evaluations=" << config.quadrature.max_evaluations << "\n";
  out << "# units: " << units_note(config) << "\n";
  out << "# distances in m; *_err columns are quadrature error estimates\n";
  out << table.variable;
  for (const auto& c : table.columns) out << "," << c;
  out << ",converged,status\n";
  for (const auto& row : table.rows) {
    out << format_number(row.x);
    for (double v : row.values) out << "," << format_number(v);
    out << "," << (row.converged ? 1 : 0) << "," << csv_field(row.status) << "\n";
  }
}

void write_jsonl(std::ostream& out, const SweepTable& table, const RunConfig& config) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(config)));
  for (const auto& row : table.rows) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(config.mode);
    j["config_hash"] = std::string("fnv1a64:") + hash;
    j[table.variable] = row.x;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const double v = row.values[i];
      if (std::isnan(v))
        j[table.columns[i]] = nullptr;
      else
        j[table.columns[i]] = v;
    }
    j["converged"] = row.converged;
    j["status"] = row.status;
    out << j.dump() << "\n";
  }
}

}  // namespace casimir
