/**
 * @file materials.hpp
 * @brief Permittivity, permeability and atomic polarizability on the
 *        imaginary frequency axis.
 *
 * All models are causal response functions evaluated at omega = i xi, where
 * they are real, >= 1 and nonincreasing in xi. Frequencies are in rad/s.
 * Polarizabilities are in Gaussian volume units (m^3), so that a dilute medium
 * satisfies n^2 - 1 = 4 pi N alpha with N in m^-3.
 */
#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace casimir {

struct ConstantModel {
  double value = 1.0;
  bool operator==(const ConstantModel&) const = default;
};

/// eps(i xi) = 1 + wp^2 / (xi (xi + gamma))
struct DrudeModel {
  double plasma_frequency = 0.0;
  double damping = 0.0;
  bool operator==(const DrudeModel&) const = default;
};

/// eps(i xi) = 1 + wp^2 / xi^2
struct PlasmaModel {
  double plasma_frequency = 0.0;
  bool operator==(const PlasmaModel&) const = default;
};

struct LorentzOscillator {
  double strength = 0.0;
  double resonance = 1.0;
  double damping = 0.0;
  bool operator==(const LorentzOscillator&) const = default;
};

/// eps(i xi) = 1 + sum_j S_j w_j^2 / (w_j^2 + xi^2 + gamma_j xi)
struct LorentzSumModel {
  std::vector<LorentzOscillator> oscillators;
  bool operator==(const LorentzSumModel&) const = default;
};

/// One response function (either eps or mu) on the imaginary axis.
class DispersionSpec {
 public:
  using Model = std::variant<ConstantModel, DrudeModel, PlasmaModel, LorentzSumModel>;

  /// Vacuum response, identically 1.
  DispersionSpec() = default;
  explicit DispersionSpec(Model model);

  static DispersionSpec constant(double value);
  static DispersionSpec drude(double plasma_frequency, double damping);
  static DispersionSpec plasma(double plasma_frequency);
  static DispersionSpec lorentz(std::vector<LorentzOscillator> oscillators);

  /// Value at omega = i xi. Throws StaticLimitError for Drude/plasma at xi = 0.
  [[nodiscard]] double evaluate(double xi) const;

  /// Zero-frequency value, or nullopt when it diverges.
  [[nodiscard]] std::optional<double> static_value() const;

  /// Largest resonance or plasma frequency of the model; 0 for a constant.
  [[nodiscard]] double characteristic_frequency() const;

  [[nodiscard]] const Model& model() const { return model_; }
  [[nodiscard]] bool is_vacuum() const;

  bool operator==(const DispersionSpec&) const = default;

 private:
  Model model_ = ConstantModel{1.0};
};

struct StaticValues {
  double eps0;
  double mu0;
  double n0;
};

/// A magnetodielectric medium described by eps(i xi) and mu(i xi).
struct Material {
  DispersionSpec eps;
  DispersionSpec mu;

  [[nodiscard]] double epsilon(double xi) const { return eps.evaluate(xi); }
  [[nodiscard]] double permeability(double xi) const { return mu.evaluate(xi); }
  [[nodiscard]] double n_squared(double xi) const { return epsilon(xi) * permeability(xi); }

  /// (eps0, mu0, n0). Throws StaticLimitError when either limit diverges.
  [[nodiscard]] StaticValues static_values() const;

  [[nodiscard]] double characteristic_frequency() const;
  [[nodiscard]] bool is_vacuum() const { return eps.is_vacuum() && mu.is_vacuum(); }

  bool operator==(const Material&) const = default;

  static Material vacuum() { return {}; }
  static Material dielectric(double eps_value) { return {DispersionSpec::constant(eps_value), {}}; }
};

/// Single-oscillator polarizability alpha(i xi) = a0 w0^2 / (w0^2 + xi^2).
struct OscillatorPolarizability {
  double static_value = 0.0;  // m^3
  double resonance = 1.0;     // rad/s

  [[nodiscard]] double evaluate(double xi) const;
  bool operator==(const OscillatorPolarizability&) const = default;
};

struct AtomPolarizability {
  OscillatorPolarizability electric;
  OscillatorPolarizability magnetic;

  /// alpha_e(i xi) + alpha_m(i xi)
  [[nodiscard]] double evaluate(double xi) const { return electric.evaluate(xi) + magnetic.evaluate(xi); }
  [[nodiscard]] double static_value() const { return electric.static_value + magnetic.static_value; }
  [[nodiscard]] double characteristic_frequency() const;

  /// Throws ConfigurationError unless both parts are nonnegative and the sum is positive.
  void validate() const;

  bool operator==(const AtomPolarizability&) const = default;
};

/// Medium of number density N (m^-3) made of the given atoms: eps - 1 = 4 pi N alpha_e
/// and mu - 1 = 4 pi N alpha_m exactly, so n^2 - 1 = 4 pi N alpha to first order.
Material dilute_medium(const AtomPolarizability& atom, double number_density);

}  // namespace casimir
