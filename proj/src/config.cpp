#include "casimir/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "casimir/errors.hpp"

namespace casimir {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ConfigSchemaError("config key '" + path + "': " + what);
}

/// Reads one JSON object, remembering which keys were used so leftovers can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_.empty() ? "<root>" : path_, "expected an object");
  }

  [[nodiscard]] std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) schema_error(key_path(key), "required key is missing");
    return *v;
  }

  double number(const std::string& key) { return as_number(require(key), key); }

  std::optional<double> optional_number(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return as_number(*v, key);
  }

  std::string string(const std::string& key) { return as_string(require(key), key); }

  std::optional<std::string> optional_string(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return as_string(*v, key);
  }

  std::optional<bool> optional_bool(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) schema_error(key_path(key), "expected true or false");
    return v->get<bool>();
  }

  std::optional<std::size_t> optional_count(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) schema_error(key_path(key), "expected an integer");
    const auto n = v->get<long long>();
    if (n < 0) schema_error(key_path(key), "must be >= 0");
    return static_cast<std::size_t>(n);
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!used_.count(key)) schema_error(key_path(key), "unknown key");
  }

 private:
  double as_number(const json& v, const std::string& key) const {
    if (!v.is_number()) schema_error(key_path(key), "expected a number");
    return v.get<double>();
  }
  std::string as_string(const json& v, const std::string& key) const {
    if (!v.is_string()) schema_error(key_path(key), "expected a string");
    return v.get<std::string>();
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// --- dispersion / material ------------------------------------------------

DispersionSpec parse_dispersion(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string model = r.string("model");
  DispersionSpec spec;
  if (model == "constant") {
    spec = DispersionSpec::constant(r.number("value"));
  } else if (model == "drude") {
    spec = DispersionSpec::drude(r.number("plasma_frequency_rad_per_s"),
                                 r.optional_number("damping_rad_per_s").value_or(0.0));
  } else if (model == "plasma") {
    spec = DispersionSpec::plasma(r.number("plasma_frequency_rad_per_s"));
  } else if (model == "lorentz") {
    const json& list = r.require("oscillators");
    if (!list.is_array()) schema_error(r.key_path("oscillators"), "expected an array");
    std::vector<LorentzOscillator> oscillators;
    for (std::size_t i = 0; i < list.size(); ++i) {
      ObjectReader o(list[i], r.key_path("oscillators") + "[" + std::to_string(i) + "]");
      LorentzOscillator osc;
      osc.strength = o.number("strength");
      osc.resonance = o.number("resonance_rad_per_s");
      osc.damping = o.optional_number("damping_rad_per_s").value_or(0.0);
      o.finish();
      oscillators.push_back(osc);
    }
    spec = DispersionSpec::lorentz(std::move(oscillators));
  } else {
    schema_error(r.key_path("model"), "must be one of constant, drude, plasma, lorentz (got '" + model + "')");
  }
  r.finish();
  return spec;
}

ordered_json render_dispersion(const DispersionSpec& spec) {
  ordered_json j;
  std::visit(
      [&j](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantModel>) {
          j["model"] = "constant";
          j["value"] = m.value;
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          j["model"] = "drude";
          j["plasma_frequency_rad_per_s"] = m.plasma_frequency;
          j["damping_rad_per_s"] = m.damping;
        } else if constexpr (std::is_same_v<T, PlasmaModel>) {
          j["model"] = "plasma";
          j["plasma_frequency_rad_per_s"] = m.plasma_frequency;
        } else {
          j["model"] = "lorentz";
          j["oscillators"] = ordered_json::array();
          for (const auto& osc : m.oscillators)
            j["oscillators"].push_back({{"strength", osc.strength},
                                        {"resonance_rad_per_s", osc.resonance},
                                        {"damping_rad_per_s", osc.damping}});
        }
      },
      spec.model());
  return j;
}

Material parse_material(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Material m;
  m.eps = parse_dispersion(r.require("eps"), r.key_path("eps"));
  if (const json* mu = r.find("mu")) m.mu = parse_dispersion(*mu, r.key_path("mu"));
  r.finish();
  return m;
}

ordered_json render_material(const Material& m) {
  ordered_json j;
  j["eps"] = render_dispersion(m.eps);
  j["mu"] = render_dispersion(m.mu);
  return j;
}

// --- mirrors and slab -------------------------------------------------------

MirrorSpec parse_mirror(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string type = r.string("type");
  MirrorSpec mirror;
  if (type == "ideal_conductive") {
    mirror = MirrorSpec::ideal_conductive();
  } else if (type == "ideal_permeable") {
    mirror = MirrorSpec::ideal_permeable();
  } else if (type == "half_space") {
    mirror = MirrorSpec::half_space(parse_material(r.require("material"), r.key_path("material")));
  } else if (type == "stack") {
    const json& list = r.require("layers");
    if (!list.is_array() || list.empty()) schema_error(r.key_path("layers"), "expected a nonempty array");
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string lp = r.key_path("layers") + "[" + std::to_string(i) + "]";
      ObjectReader l(list[i], lp);
      Layer layer;
      layer.material = parse_material(l.require("material"), l.key_path("material"));
      const bool last = i + 1 == list.size();
      const auto thickness = l.optional_number("thickness_m");
      if (last && thickness) schema_error(l.key_path("thickness_m"), "the last layer is the half-space; omit it");
      if (!last && !thickness) schema_error(l.key_path("thickness_m"), "required for every layer but the last");
      layer.thickness = last ? kHalfSpace : *thickness;
      l.finish();
      layers.push_back(std::move(layer));
    }
    mirror = MirrorSpec::stack(std::move(layers));
  } else {
    schema_error(r.key_path("type"),
                 "must be one of ideal_conductive, ideal_permeable, half_space, stack (got '" + type + "')");
  }
  r.finish();
  return mirror;
}

ordered_json render_mirror(const MirrorSpec& m) {
  ordered_json j;
  switch (m.kind()) {
    case MirrorSpec::Kind::IdealConductive:
      j["type"] = "ideal_conductive";
      break;
    case MirrorSpec::Kind::IdealPermeable:
      j["type"] = "ideal_permeable";
      break;
    case MirrorSpec::Kind::Stack:
      j["type"] = "stack";
      j["layers"] = ordered_json::array();
      for (const auto& layer : m.layers()) {
        ordered_json l;
        l["material"] = render_material(layer.material);
        if (std::isfinite(layer.thickness)) l["thickness_m"] = layer.thickness;
        j["layers"].push_back(l);
      }
      break;
  }
  return j;
}

SlabSpec parse_slab(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string type = r.string("type");
  SlabSpec slab = SlabSpec::ideal_conductive();
  if (type == "ideal_conductive") {
    slab = SlabSpec::ideal_conductive();
  } else if (type == "ideal_permeable") {
    slab = SlabSpec::ideal_permeable();
  } else if (type == "real") {
    Material material = parse_material(r.require("material"), r.key_path("material"));
    slab = SlabSpec::real(std::move(material), r.number("thickness_m"));
  } else {
    schema_error(r.key_path("type"), "must be one of ideal_conductive, ideal_permeable, real (got '" + type + "')");
  }
  r.finish();
  return slab;
}

ordered_json render_slab(const SlabSpec& s) {
  ordered_json j;
  switch (s.kind()) {
    case SlabSpec::Kind::IdealConductive:
      j["type"] = "ideal_conductive";
      break;
    case SlabSpec::Kind::IdealPermeable:
      j["type"] = "ideal_permeable";
      break;
    case SlabSpec::Kind::Real:
      j["type"] = "real";
      j["material"] = render_material(s.material());
      j["thickness_m"] = s.thickness();
      break;
  }
  return j;
}

// --- enums ----------------------------------------------------------------

SweepVariable sweep_variable_from_string(const std::string& name, const std::string& path) {
  if (name == "d1") return SweepVariable::D1;
  if (name == "d2") return SweepVariable::D2;
  if (name == "z") return SweepVariable::Z;
  schema_error(path, "must be one of d1, d2, z (got '" + name + "')");
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::D1:
      return "d1";
    case SweepVariable::D2:
      return "d2";
    case SweepVariable::Z:
      return "z";
  }
  return "";
}

bool uses_distance_sweep(RunMode mode) { return mode == RunMode::SlabForce || mode == RunMode::Ideal; }
bool uses_z(RunMode mode) {
  return mode == RunMode::Density || mode == RunMode::AtomForce || mode == RunMode::ZsCompare;
}

void require_positive(double value, const std::string& path) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigurationError("config key '" + path + "': must be > 0");
}

// --- sections ---------------------------------------------------------------

/// Distance key ("d1" or "d2") supplied by the sweep, if any; checked properly by parse_sweep.
std::string swept_distance(const json& root) {
  const auto s = root.find("sweep");
  if (s == root.end() || !s->is_object()) return {};
  const auto v = s->find("variable");
  return v != s->end() && v->is_string() ? v->get<std::string>() : std::string{};
}

CavityConfig parse_cavity(const json& j, RunMode mode, const std::string& swept) {
  ObjectReader r(j, "cavity");
  CavityConfig cavity;
  if (const json* m = r.find("medium")) cavity.medium = parse_material(*m, "cavity.medium");
  cavity.semi_infinite = r.optional_bool("semi_infinite").value_or(uses_z(mode));
  cavity.mirror2 = parse_mirror(r.require("mirror2"), "cavity.mirror2");
  if (const json* m = r.find("mirror1")) {
    cavity.mirror1 = parse_mirror(*m, "cavity.mirror1");
  } else if (!cavity.semi_infinite) {
    schema_error("cavity.mirror1", "required unless semi_infinite is true");
  }
  if (const json* s = r.find("slab")) {
    cavity.slab = parse_slab(*s, "cavity.slab");
  } else if (mode == RunMode::SlabForce || mode == RunMode::Ideal) {
    schema_error("cavity.slab", "required key is missing");
  }
  const auto d2 = r.optional_number("d2_m");
  const auto d1 = r.optional_number("d1_m");
  if (d2) {
    require_positive(*d2, "cavity.d2_m");
    cavity.d2 = *d2;
  } else if (swept != "d2" &&
             (uses_distance_sweep(mode) || (mode == RunMode::Density && !cavity.semi_infinite))) {
    schema_error("cavity.d2_m", "required key is missing");
  }
  if (d1) {
    require_positive(*d1, "cavity.d1_m");
    cavity.d1 = *d1;
  } else if (!cavity.semi_infinite && mode != RunMode::Validate && swept != "d1") {
    schema_error("cavity.d1_m", "required unless semi_infinite is true");
  }
  r.finish();
  return cavity;
}

AtomPolarizability parse_atom(const json& j) {
  ObjectReader r(j, "atom");
  AtomPolarizability atom;
  atom.electric.static_value = r.optional_number("alpha_e0_m3").value_or(0.0);
  atom.electric.resonance = r.optional_number("omega_e_rad_per_s").value_or(1.0);
  atom.magnetic.static_value = r.optional_number("alpha_m0_m3").value_or(0.0);
  atom.magnetic.resonance = r.optional_number("omega_m_rad_per_s").value_or(1.0);
  r.finish();
  atom.validate();
  return atom;
}

SweepSpec parse_sweep(const json& j, RunMode mode) {
  ObjectReader r(j, "sweep");
  SweepSpec s;
  s.variable = sweep_variable_from_string(r.string("variable"), "sweep.variable");
  s.start = r.number("start_m");
  s.stop = r.number("stop_m");
  const auto points = r.optional_count("points");
  if (!points) schema_error("sweep.points", "required key is missing");
  s.points = *points;
  const std::string spacing = r.optional_string("spacing").value_or("linear");
  if (spacing == "linear")
    s.spacing = Spacing::Linear;
  else if (spacing == "log")
    s.spacing = Spacing::Log;
  else
    schema_error("sweep.spacing", "must be linear or log (got '" + spacing + "')");
  r.finish();

  if (s.points < 1) schema_error("sweep.points", "must be >= 1");
  if (!(s.start < s.stop)) schema_error("sweep.start_m", "must be smaller than sweep.stop_m");
  if (uses_z(mode) && s.variable != SweepVariable::Z)
    schema_error("sweep.variable", "mode " + to_string(mode) + " sweeps over z");
  if (uses_distance_sweep(mode) && s.variable == SweepVariable::Z)
    schema_error("sweep.variable", "mode " + to_string(mode) + " sweeps over d1 or d2");
  require_positive(s.start, "sweep.start_m");
  return s;
}

QuadratureSettings parse_quadrature(const json& j) {
  ObjectReader r(j, "quadrature");
  QuadratureSettings q;
  q.rel_tol = r.optional_number("rel_tol").value_or(q.rel_tol);
  q.abs_tol = r.optional_number("abs_tol").value_or(q.abs_tol);
  q.max_evaluations = r.optional_count("max_evaluations").value_or(q.max_evaluations);
  r.finish();
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigurationError(std::string("config key 'quadrature': ") + e.what());
  }
  return q;
}

OutputSpec parse_output(const json& j) {
  ObjectReader r(j, "output");
  OutputSpec o;
  if (auto u = r.optional_string("units")) {
    try {
      o.units = output_units_from_string(*u);
    } catch (const std::invalid_argument& e) {
      schema_error("output.units", e.what());
    }
  }
  if (auto f = r.optional_string("format")) {
    if (*f == "csv")
      o.format = OutputFormat::Csv;
    else if (*f == "jsonl")
      o.format = OutputFormat::Jsonl;
    else
      schema_error("output.format", "must be csv or jsonl (got '" + *f + "')");
  }
  o.path = r.optional_string("path").value_or("");
  r.finish();
  return o;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::SlabForce:
      return "slab-force";
    case RunMode::Ideal:
      return "ideal";
    case RunMode::Density:
      return "density";
    case RunMode::AtomForce:
      return "atom-force";
    case RunMode::ZsCompare:
      return "zs-compare";
    case RunMode::Validate:
      return "validate";
  }
  return "";
}

RunMode run_mode_from_string(const std::string& name) {
  for (RunMode m : {RunMode::SlabForce, RunMode::Ideal, RunMode::Density, RunMode::AtomForce, RunMode::ZsCompare,
                    RunMode::Validate})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (expected slab-force, ideal, density, atom-force, zs-compare, validate)");
}

std::string to_string(OutputUnits units) {
  switch (units) {
    case OutputUnits::SI:
      return "si";
    case OutputUnits::Coefficient:
      return "coef";
    case OutputUnits::Both:
      return "both";
  }
  return "";
}

OutputUnits output_units_from_string(const std::string& name) {
  if (name == "si") return OutputUnits::SI;
  if (name == "coef") return OutputUnits::Coefficient;
  if (name == "both") return OutputUnits::Both;
  throw std::invalid_argument("units must be si, coef or both (got '" + name + "')");
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    if (spacing == Spacing::Log)
      out.push_back(start * std::pow(stop / start, f));
    else
      out.push_back(start + (stop - start) * f);
  }
  out.back() = stop;
  return out;
}

namespace {

RunConfig parse_document(const std::string& text, std::optional<RunMode> expected) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigSchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  ObjectReader r(root, "");
  RunConfig config;
  const std::optional<std::string> mode_name = expected ? r.optional_string("mode") : r.string("mode");
  if (mode_name) {
    try {
      config.mode = run_mode_from_string(*mode_name);
    } catch (const std::invalid_argument& e) {
      schema_error("mode", e.what());
    }
    if (expected && config.mode != *expected)
      schema_error("mode", "config is for " + *mode_name + " but " + to_string(*expected) + " was requested");
  } else {
    config.mode = *expected;
  }
  const RunMode mode = config.mode;

  if (const json* c = r.find("cavity")) {
    config.cavity = parse_cavity(*c, mode, swept_distance(root));
  } else if (mode != RunMode::Validate) {
    schema_error("cavity", "required key is missing");
  }
  if (const json* a = r.find("atom")) config.atom = parse_atom(*a);
  if ((mode == RunMode::AtomForce || mode == RunMode::ZsCompare) && !config.atom)
    schema_error("atom", "required for mode " + to_string(mode));
  if (const json* s = r.find("sweep")) config.sweep = parse_sweep(*s, mode);
  if (auto z = r.optional_number("z_m")) {
    require_positive(*z, "z_m");
    config.z = *z;
  } else if (uses_z(mode) && !config.sweep) {
    schema_error("z_m", "required when no z sweep is given");
  }
  if (auto side = r.optional_string("density_side")) {
    if (*side == "mirror1")
      config.density_side = MirrorSide::Mirror1;
    else if (*side == "mirror2")
      config.density_side = MirrorSide::Mirror2;
    else
      schema_error("density_side", "must be mirror1 or mirror2");
  }
  if (const json* q = r.find("quadrature")) config.quadrature = parse_quadrature(*q);
  if (const json* o = r.find("output")) config.output = parse_output(*o);
  r.finish();

  if (config.sweep && config.sweep->variable == SweepVariable::D1 && config.cavity.semi_infinite)
    schema_error("sweep.variable", "d1 cannot be swept in a semi-infinite cavity");
  if (mode == RunMode::Density && config.cavity.semi_infinite && config.density_side == MirrorSide::Mirror1)
    throw ConfigurationError("config key 'density_side': a semi-infinite cavity only has mirror2");
  return config;
}

}  // namespace

RunConfig parse_config(const std::string& text) { return parse_document(text, std::nullopt); }

RunConfig parse_config(const std::string& text, RunMode mode) { return parse_document(text, mode); }

std::string render_config(const RunConfig& config) {
  ordered_json j;
  j["mode"] = to_string(config.mode);
  ordered_json cavity;
  cavity["medium"] = render_material(config.cavity.medium);
  cavity["mirror1"] = render_mirror(config.cavity.mirror1);
  cavity["mirror2"] = render_mirror(config.cavity.mirror2);
  cavity["slab"] = render_slab(config.cavity.slab);
  cavity["d1_m"] = config.cavity.d1;
  cavity["d2_m"] = config.cavity.d2;
  cavity["semi_infinite"] = config.cavity.semi_infinite;
  j["cavity"] = cavity;
  if (config.atom) {
    j["atom"] = {{"alpha_e0_m3", config.atom->electric.static_value},
                 {"omega_e_rad_per_s", config.atom->electric.resonance},
                 {"alpha_m0_m3", config.atom->magnetic.static_value},
                 {"omega_m_rad_per_s", config.atom->magnetic.resonance}};
  }
  if (config.z > 0.0) j["z_m"] = config.z;
  j["density_side"] = config.density_side == MirrorSide::Mirror1 ? "mirror1" : "mirror2";
  if (config.sweep) {
    j["sweep"] = {{"variable", to_string(config.sweep->variable)},
                  {"start_m", config.sweep->start},
                  {"stop_m", config.sweep->stop},
                  {"points", config.sweep->points},
                  {"spacing", config.sweep->spacing == Spacing::Log ? "log" : "linear"}};
  }
  j["quadrature"] = {{"rel_tol", config.quadrature.rel_tol},
                     {"abs_tol", config.quadrature.abs_tol},
                     {"max_evaluations", config.quadrature.max_evaluations}};
  j["output"] = {{"units", to_string(config.output.units)},
                 {"format", config.output.format == OutputFormat::Jsonl ? "jsonl" : "csv"},
                 {"path", config.output.path}};
  return j.dump(2);
}

}  // namespace casimir
