/**
 * @file optics.hpp
 * @brief Perpendicular wave vectors and Fresnel coefficients on the imaginary
 *        frequency axis.
 *
 * Everything here is real: with omega = i xi every response function is real
 * and positive, so kappa = sqrt(n^2 xi^2 / c^2 + k^2) > 0 and all exponentials
 * decay. Layered mirrors are composed recursively from the cavity side inward.
 *
 * Three parameterizations of the same coefficients are provided:
 *  - standard:     in-plane wave vector k,
 *  - nonretarded:  every kappa replaced by k,
 *  - p-form:       kappa = n xi p / c, kappa_l = n (xi / c) s_l,
 *                  s_l = sqrt(p^2 - 1 + n_l^2 / n^2).
 */
#pragma once

#include <array>
#include <limits>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { TM, TE };  // p, s

inline constexpr std::array<Polarization, 2> kPolarizations{Polarization::TM, Polarization::TE};

/// Delta_q = +1 for p (TM), -1 for s (TE).
constexpr double polarization_sign(Polarization q) { return q == Polarization::TM ? 1.0 : -1.0; }

inline constexpr double kHalfSpace = std::numeric_limits<double>::infinity();

struct Layer {
  Material material;
  double thickness = kHalfSpace;  // m; infinite only for the terminating half-space
  bool operator==(const Layer&) const = default;
};

class MirrorSpec {
 public:
  enum class Kind { IdealConductive, IdealPermeable, Stack };

  /// Vacuum half-space (a transparent "mirror").
  MirrorSpec() : MirrorSpec(Kind::Stack, {Layer{}}) {}

  static MirrorSpec ideal_conductive() { return MirrorSpec(Kind::IdealConductive, {}); }
  static MirrorSpec ideal_permeable() { return MirrorSpec(Kind::IdealPermeable, {}); }
  /// Layers listed from the cavity side inward; the last one must be the half-space.
  static MirrorSpec stack(std::vector<Layer> layers);
  static MirrorSpec half_space(Material material) { return stack({Layer{std::move(material), kHalfSpace}}); }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_ideal() const { return kind_ != Kind::Stack; }
  [[nodiscard]] const std::vector<Layer>& layers() const { return layers_; }
  [[nodiscard]] double characteristic_frequency() const;

  bool operator==(const MirrorSpec&) const = default;

 private:
  MirrorSpec(Kind kind, std::vector<Layer> layers) : kind_(kind), layers_(std::move(layers)) {}

  Kind kind_;
  std::vector<Layer> layers_;
};

class SlabSpec {
 public:
  enum class Kind { Real, IdealConductive, IdealPermeable };

  static SlabSpec real(Material material, double thickness);
  static SlabSpec ideal_conductive() { return SlabSpec(Kind::IdealConductive, {}, 0.0); }
  static SlabSpec ideal_permeable() { return SlabSpec(Kind::IdealPermeable, {}, 0.0); }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_ideal() const { return kind_ != Kind::Real; }
  [[nodiscard]] const Material& material() const { return material_; }
  /// Physical thickness; 0 for ideal slabs, which do not enter cavity-length accounting.
  [[nodiscard]] double thickness() const { return thickness_; }

  bool operator==(const SlabSpec&) const = default;

 private:
  SlabSpec(Kind kind, Material material, double thickness)
      : kind_(kind), material_(std::move(material)), thickness_(thickness) {}

  Kind kind_;
  Material material_;
  double thickness_;
};

/// kappa = sqrt(n^2 xi^2 / c^2 + k^2). Throws NumericalDomainError when xi = k = 0.
double kappa(double n_sq, double xi, double k);

/// Local response of one medium at a given (xi, k).
struct MediumResponse {
  double eps;
  double mu;
  double kappa;
};

/// Single-interface coefficient from `incident` into `other`:
/// rho^p = (eps_b k_a - eps_a k_b)/(eps_b k_a + eps_a k_b), rho^s likewise with mu.
double rho_interface(Polarization q, const MediumResponse& incident, const MediumResponse& other);

/**
 * Whole-slab reflection and transmission plus the combinations the force
 * formulas need, in forms that stay accurate when the slab is thin or
 * index-matched. With E = exp(-2 kappa_s d_s) and D = 1 - rho^2 E:
 *
 *   r = rho (1 - E) / D,         t = (1 - rho^2) sqrt(E) / D,
 *   (1 + r)^2 - t^2 = (1 + rho)^2 (1 - E) / D,
 *   r^2 - t^2 = (rho^2 - E) / D,
 *   t^2 = transmission_scale * exp(-transmission_exponent).
 */
struct SlabCoefficients {
  double r = 0.0;
  double t = 0.0;
  double one_plus_r_sq_minus_t_sq = 1.0;
  double r_sq_minus_t_sq = 0.0;
  double transmission_scale = 0.0;
  double transmission_exponent = 0.0;
};

SlabCoefficients slab_rt(Polarization q, const SlabSpec& slab, const Material& cavity, double xi, double k);

double mirror_reflection(Polarization q, const MirrorSpec& mirror, const Material& cavity, double xi, double k);
double reflection_nonretarded(Polarization q, const MirrorSpec& mirror, const Material& cavity, double xi,
                              double k);
double reflection_pform(Polarization q, const MirrorSpec& mirror, const Material& cavity, double xi, double p);

/// A mirror with all response functions frozen at one imaginary frequency.
/// Reflection coefficients are then cheap functions of k^2 (or p).
class MirrorResponse {
 public:
  MirrorResponse(const MirrorSpec& mirror, const Material& cavity, double xi);

  [[nodiscard]] double reflection(Polarization q, double k_sq) const;
  [[nodiscard]] double reflection_nonretarded(Polarization q, double k) const;
  [[nodiscard]] double reflection_pform(Polarization q, double p) const;

 private:
  struct LayerResponse {
    double eps;
    double mu;
    double n_sq;
    double thickness;
  };

  MirrorSpec::Kind kind_;
  double xi_;
  LayerResponse cavity_;
  std::vector<LayerResponse> layers_;
};

/// A slab (and its surrounding cavity medium) frozen at one imaginary frequency.
class SlabResponse {
 public:
  SlabResponse(const SlabSpec& slab, const Material& cavity, double xi);

  [[nodiscard]] SlabCoefficients coefficients(Polarization q, double k_sq) const;

 private:
  SlabSpec::Kind kind_;
  double xi_;
  double thickness_;
  double eps_, mu_, n_sq_;
  double eps_s_, mu_s_, n_sq_s_;
};

}  // namespace casimir
