/**
 * @file forces.hpp
 * @brief Lorentz-force Casimir force on a slab in a planar magnetodielectric
 *        cavity, its split into a medium-screened Casimir part f1 and a
 *        medium-assisted part f2, the force density on the cavity medium,
 *        and the atom-mirror forces implied for dilute media.
 *
 * Sign convention: a positive slab force points toward mirror 2; a positive
 * density or atom force means attraction toward the mirror.
 *
 * Per-area forces are in Pa, densities in N/m^3 and atom forces in N.
 */
#pragma once

#include <optional>

#include "casimir/materials.hpp"
#include "casimir/optics.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct CavityConfig {
  MirrorSpec mirror1 = MirrorSpec::ideal_conductive();
  MirrorSpec mirror2 = MirrorSpec::ideal_conductive();
  Material medium;
  SlabSpec slab = SlabSpec::ideal_conductive();
  double d1 = 1e-6;  // m, ignored when semi_infinite
  double d2 = 1e-6;  // m
  /// Mirror 1 removed to infinity (d1 -> inf) exactly.
  bool semi_infinite = false;

  /// Throws ConfigurationError on nonpositive distances.
  void validate() const;
  /// L = d1 + d2 + d_s, with d_s = 0 for ideal slabs. Infinite when semi-infinite.
  [[nodiscard]] double length() const;
  /// d2 for a semi-infinite cavity, min(d1, d2) otherwise.
  [[nodiscard]] double reference_distance() const;
  /// Largest resonance/plasma frequency of any material; 0 for static models.
  [[nodiscard]] double transparency_frequency_estimate() const;

  bool operator==(const CavityConfig&) const = default;
};

/// A quantity resolved into its TM (p) and TE (s) contributions.
struct PolarizedIntegral {
  IntegralResult tm;
  IntegralResult te;

  [[nodiscard]] double value() const { return tm.value + te.value; }
  [[nodiscard]] double error() const { return tm.error_estimate + te.error_estimate; }
  [[nodiscard]] bool converged() const { return tm.converged && te.converged; }
};

struct ForceBreakdown {
  PolarizedIntegral f1;  // medium-screened Casimir force
  PolarizedIntegral f2;  // medium-assisted force
  double reference_distance = 0.0;

  [[nodiscard]] double total() const { return f1.value() + f2.value(); }
  [[nodiscard]] double total_error() const { return f1.error() + f2.error(); }
  [[nodiscard]] bool converged() const { return f1.converged() && f2.converged(); }
  /// Dimensionless C = f d_ref^4 / (hbar c).
  [[nodiscard]] double coefficient(double force) const;
};

/// Result of integrating the unsplit force formula directly.
struct DirectForce {
  PolarizedIntegral total;
  double reference_distance = 0.0;

  [[nodiscard]] double coefficient(double force) const;
};

enum class AtomForceRegime { Full, Nonretarded, Far };

struct AtomForceResult {
  double value = 0.0;  // N
  double error_estimate = 0.0;
  AtomForceRegime regime = AtomForceRegime::Full;
  bool converged = true;
  std::size_t evaluations = 0;

  /// f z^5 / (hbar c alpha0).
  [[nodiscard]] double coefficient(double z, double alpha0) const;
};

/// Everything the integrands need at one (xi, k) for one polarization.
struct CavityPoint {
  Polarization q = Polarization::TM;
  double xi = 0.0;
  double kappa = 0.0;
  double eps = 1.0;
  double mu = 1.0;
  SlabCoefficients slab;
  double r1 = 0.0;
  double r2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  bool semi_infinite = false;
};

/**
 * N^q = 1 - r (r1 e^{-2 kappa d1} + r2 e^{-2 kappa d2}) + (r^2 - t^2) r1 r2 e^{-2 kappa (d1 + d2)},
 * evaluated in the factored form (1 - r r1 e1)(1 - r r2 e2) - t^2 r1 r2 e1 e2 with expm1,
 * so ideal mirrors stay accurate as kappa -> 0. Pass r1 = 0 for a semi-infinite cavity.
 * Throws DegenerateDenominatorError unless N > 0.
 */
double denominator_N(const SlabCoefficients& slab, double r1, double r2, double kappa, double d1, double d2);

/// g_{q2}(i xi, k; 0) - g_{q1}(i xi, k; d1).
double g_difference(const CavityPoint& point);

/// Direct integration of the total force formula; a cross-check of f1 + f2.
DirectForce force_total_direct(const CavityConfig& config, const QuadratureSettings& settings = {});

/// f = f1 + f2 with per-polarization parts.
ForceBreakdown force_split(const CavityConfig& config, const QuadratureSettings& settings = {});

enum class MirrorSide { Mirror1, Mirror2 };

/**
 * Force density f_i(z) on the cavity medium at distance z from mirror i, for a
 * cavity whose slab is index-matched to the medium (n_s = n). In a
 * semi-infinite cavity only Mirror2 is present and the denominator is 1.
 * Throws ConfigurationError for a non-index-matched slab.
 */
IntegralResult medium_force_density(const CavityConfig& config, MirrorSide side, double z,
                                    const QuadratureSettings& settings = {});

/// Density in front of a single mirror (semi-infinite medium).
IntegralResult medium_force_density(const MirrorSpec& mirror, const Material& medium, double z,
                                    const QuadratureSettings& settings = {});

/// Force on the medium layer occupying the slab region, computed as
/// int_{d2}^{d2+ds} f_2(z) dz - int_{d1}^{d1+ds} f_1(z) dz.
IntegralResult medium_layer_force(const CavityConfig& config, const QuadratureSettings& settings = {});

/// Atom of polarizability `atom` at distance z from `mirror`, inside `medium`.
AtomForceResult atom_force_full(double z, const MirrorSpec& mirror, const Material& medium,
                                const AtomPolarizability& atom, const QuadratureSettings& settings = {});

/// Nonretarded form (all kappa -> k). Throws NumericalDomainError when the integral diverges: ideal
/// mirrors, or layers whose response keeps differing from the medium at high frequency.
AtomForceResult atom_force_nonretarded(double z, const MirrorSpec& mirror, const Material& medium,
                                       const AtomPolarizability& atom, const QuadratureSettings& settings = {});

/// Large-distance form with static response. Throws StaticLimitError when a static value diverges.
AtomForceResult atom_force_far(double z, const MirrorSpec& mirror, const Material& medium,
                               const AtomPolarizability& atom, const QuadratureSettings& settings = {});

enum class ZsRegime { Full, Near, Far };

/// Zhou-Spruch atom force (an atom embedded in the medium), for comparison.
AtomForceResult zs_atom_force(double z, const MirrorSpec& mirror, const Material& medium,
                              const AtomPolarizability& atom, ZsRegime regime,
                              const QuadratureSettings& settings = {});

/// Largest resonance/plasma frequency among the mirror, medium and atom.
double transparency_frequency_estimate(const MirrorSpec& mirror, const Material& medium,
                                       const AtomPolarizability& atom);

}  // namespace casimir
