#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool nonnegative_finite(double v) { return std::isfinite(v) && v >= 0.0; }
bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void validate_model(const DispersionSpec::Model& model) {
  std::visit(Overloaded{
                 [](const ConstantModel& m) {
                   if (!std::isfinite(m.value) || m.value < 1.0)
                     throw ConfigurationError("constant response must be finite and >= 1, got " +
                                              std::to_string(m.value));
                 },
                 [](const DrudeModel& m) {
                   if (!positive_finite(m.plasma_frequency))
                     throw ConfigurationError("Drude plasma frequency must be positive");
                   if (!nonnegative_finite(m.damping))
                     throw ConfigurationError("Drude damping must be >= 0");
                 },
                 [](const PlasmaModel& m) {
                   if (!positive_finite(m.plasma_frequency))
                     throw ConfigurationError("plasma frequency must be positive");
                 },
                 [](const LorentzSumModel& m) {
                   for (const auto& osc : m.oscillators) {
                     if (!nonnegative_finite(osc.strength))
                       throw ConfigurationError("Lorentz strength must be >= 0");
                     if (!positive_finite(osc.resonance))
                       throw ConfigurationError("Lorentz resonance must be positive");
                     if (!nonnegative_finite(osc.damping))
                       throw ConfigurationError("Lorentz damping must be >= 0");
                   }
                 },
             },
             model);
}

}  // namespace

DispersionSpec::DispersionSpec(Model model) : model_(std::move(model)) { validate_model(model_); }

DispersionSpec DispersionSpec::constant(double value) { return DispersionSpec(ConstantModel{value}); }

DispersionSpec DispersionSpec::drude(double plasma_frequency, double damping) {
  return DispersionSpec(DrudeModel{plasma_frequency, damping});
}

DispersionSpec DispersionSpec::plasma(double plasma_frequency) {
  return DispersionSpec(PlasmaModel{plasma_frequency});
}

DispersionSpec DispersionSpec::lorentz(std::vector<LorentzOscillator> oscillators) {
  return DispersionSpec(LorentzSumModel{std::move(oscillators)});
}

double DispersionSpec::evaluate(double xi) const {
  if (!(xi >= 0.0)) throw NumericalDomainError("imaginary frequency must be >= 0");
  return std::visit(
      Overloaded{
          [](const ConstantModel& m) { return m.value; },
          [xi](const DrudeModel& m) {
            if (xi == 0.0) throw StaticLimitError("Drude model: static value undefined (diverges at xi = 0)");
            return 1.0 + m.plasma_frequency * m.plasma_frequency / (xi * (xi + m.damping));
          },
          [xi](const PlasmaModel& m) {
            if (xi == 0.0) throw StaticLimitError("plasma model: static value undefined (diverges at xi = 0)");
            const double ratio = m.plasma_frequency / xi;
            return 1.0 + ratio * ratio;
          },
          [xi](const LorentzSumModel& m) {
            double value = 1.0;
            for (const auto& osc : m.oscillators) {
              const double w2 = osc.resonance * osc.resonance;
              value += osc.strength * w2 / (w2 + xi * xi + osc.damping * xi);
            }
            return value;
          },
      },
      model_);
}

std::optional<double> DispersionSpec::static_value() const {
  return std::visit(Overloaded{
                        [](const ConstantModel& m) -> std::optional<double> { return m.value; },
                        [](const DrudeModel&) -> std::optional<double> { return std::nullopt; },
                        [](const PlasmaModel&) -> std::optional<double> { return std::nullopt; },
                        [](const LorentzSumModel& m) -> std::optional<double> {
                          double value = 1.0;
                          for (const auto& osc : m.oscillators) value += osc.strength;
                          return value;
                        },
                    },
                    model_);
}

double DispersionSpec::characteristic_frequency() const {
  return std::visit(Overloaded{
                        [](const ConstantModel&) { return 0.0; },
                        [](const DrudeModel& m) { return m.plasma_frequency; },
                        [](const PlasmaModel& m) { return m.plasma_frequency; },
                        [](const LorentzSumModel& m) {
                          double w = 0.0;
                          for (const auto& osc : m.oscillators)
                            if (osc.strength > 0.0) w = std::max(w, osc.resonance);
                          return w;
                        },
                    },
                    model_);
}

bool DispersionSpec::is_vacuum() const {
  if (const auto* c = std::get_if<ConstantModel>(&model_)) return c->value == 1.0;
  if (const auto* l = std::get_if<LorentzSumModel>(&model_))
    return std::all_of(l->oscillators.begin(), l->oscillators.end(),
                       [](const LorentzOscillator& o) { return o.strength == 0.0; });
  return false;
}

StaticValues Material::static_values() const {
  const auto e0 = eps.static_value();
  const auto m0 = mu.static_value();
  if (!e0) throw StaticLimitError("permittivity has no finite static value");
  if (!m0) throw StaticLimitError("permeability has no finite static value");
  return {*e0, *m0, std::sqrt(*e0 * *m0)};
}

double Material::characteristic_frequency() const {
  return std::max(eps.characteristic_frequency(), mu.characteristic_frequency());
}

double OscillatorPolarizability::evaluate(double xi) const {
  const double w2 = resonance * resonance;
  return static_value * w2 / (w2 + xi * xi);
}

double AtomPolarizability::characteristic_frequency() const {
  double w = 0.0;
  if (electric.static_value > 0.0) w = std::max(w, electric.resonance);
  if (magnetic.static_value > 0.0) w = std::max(w, magnetic.resonance);
  return w;
}

void AtomPolarizability::validate() const {
  for (const auto* part : {&electric, &magnetic}) {
    if (!nonnegative_finite(part->static_value))
      throw ConfigurationError("static polarizability must be >= 0");
    if (!positive_finite(part->resonance)) throw ConfigurationError("polarizability resonance must be positive");
  }
  if (!(static_value() > 0.0)) throw ConfigurationError("atom must have a positive total polarizability");
}

Material dilute_medium(const AtomPolarizability& atom, double number_density) {
  atom.validate();
  if (!nonnegative_finite(number_density)) throw ConfigurationError("number density must be >= 0");
  const double four_pi_n = 4.0 * constants::pi * number_density;
  auto part = [four_pi_n](const OscillatorPolarizability& p) {
    if (p.static_value == 0.0) return DispersionSpec{};
    return DispersionSpec::lorentz({{four_pi_n * p.static_value, p.resonance, 0.0}});
  };
  return {part(atom.electric), part(atom.magnetic)};
}

}  // namespace casimir
