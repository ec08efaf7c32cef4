#include "casimir/optics.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {
namespace {

constexpr double c = constants::speed_of_light;

/// Medium as seen by the interface formulas: w^2 = n^2 scale_sq + shared, where the shared
/// part (k^2, or p^2 - 1) is the same on both sides of every interface.
struct Side {
  double eps;
  double mu;
  double n_sq;
  double w;
};

/// (a w_a - b w_b) / (a w_a + b w_b) with w_a - w_b taken from the difference of squares,
/// so the coefficient keeps full relative accuracy when w_a and w_b nearly coincide.
double interface_coefficient(Polarization q, const Side& x, const Side& y, double scale_sq) {
  const double a = q == Polarization::TM ? y.eps : y.mu;
  const double b = q == Polarization::TM ? x.eps : x.mu;
  const double sum = x.w + y.w;
  const double w_diff = sum > 0.0 ? (x.n_sq - y.n_sq) * scale_sq / sum : 0.0;
  return (a * w_diff + (a - b) * y.w) / (a * x.w + b * y.w);
}

double ideal_reflection(Polarization q, bool conductive) {
  return conductive ? polarization_sign(q) : -polarization_sign(q);
}

/// Z^p = w / eps, Z^s = w / mu; an interface coefficient is (Z_a - Z_b)/(Z_a + Z_b).
double impedance(Polarization q, const Side& x) { return x.w / (q == Polarization::TM ? x.eps : x.mu); }

/// Z_y - Z_x without cancellation when the two media nearly coincide.
double impedance_step(Polarization q, const Side& x, const Side& y, double scale_sq) {
  const double a = q == Polarization::TM ? x.eps : x.mu;
  const double b = q == Polarization::TM ? y.eps : y.mu;
  const double sum = x.w + y.w;
  const double w_diff = sum > 0.0 ? (y.n_sq - x.n_sq) * scale_sq / sum : 0.0;
  return (a * w_diff + (a - b) * x.w) / (a * b);
}

/**
 * Reflection of a layered half-space seen from the cavity, by the impedance recursion
 * Z_in = Z_j (Y + Z_j T) / (Z_j + Y T), T = tanh(kappa_j d_j), from the innermost layer out.
 * For passive media every term is positive, so thin high-contrast films cost no accuracy.
 * Y is also tracked as an offset from the impedance of a reference layer, whichever layer
 * keeps that offset smallest, so that weakly reflecting stacks keep their relative accuracy.
 * `side(l)` gives the Side of a layer and `kappa_d(l)` its kappa_j d_j.
 */
template <class Layers, class SideOf, class KappaD>
double stack_reflection(Polarization q, const Side& cavity, const Layers& layers, double scale_sq,
                        const SideOf& side, const KappaD& kappa_d) {
  const std::size_t n = layers.size();
  Side reference = side(layers[n - 1]);
  double y = impedance(q, reference);
  double offset = 0.0;  // y - Z(reference)

  // y - Z(x), picking whichever route loses less to rounding.
  auto above = [&](const Side& x) {
    const double step = impedance_step(q, x, reference, scale_sq);
    const double zx = impedance(q, x);
    if (std::abs(offset) + std::abs(step) < std::max(y, zx)) return offset + step;
    return y - zx;
  };

  for (std::size_t j = n - 1; j-- > 0;) {
    const Side layer = side(layers[j]);
    const double z = impedance(q, layer);
    const double x = 2.0 * kappa_d(layers[j]);
    const double e = std::exp(-x);
    const double t = -std::expm1(-x) / (1.0 + e);
    const double one_minus_t = 2.0 * e / (1.0 + e);
    const double denom = z + y * t;
    const double y_minus_z = above(layer);
    const double from_layer = z * y_minus_z * one_minus_t / denom;  // new y - z
    const double change = -t * y_minus_z * (z + y) / denom;        // new y - old y
    if (std::abs(offset) + std::abs(change) < std::abs(from_layer)) {
      offset += change;
    } else {
      offset = from_layer;
      reference = layer;
    }
    y = z * (y + z * t) / denom;
  }
  return -above(cavity) / (impedance(q, cavity) + y);
}

}  // namespace

MirrorSpec MirrorSpec::stack(std::vector<Layer> layers) {
  if (layers.empty()) throw ConfigurationError("mirror stack must contain at least the terminating half-space");
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    const double d = layers[i].thickness;
    if (!std::isfinite(d) || d < 0.0)
      throw ConfigurationError("mirror layer " + std::to_string(i) + " needs a finite thickness >= 0");
  }
  if (std::isfinite(layers.back().thickness))
    throw ConfigurationError("last mirror layer must be the half-space (infinite thickness)");
  return MirrorSpec(Kind::Stack, std::move(layers));
}

double MirrorSpec::characteristic_frequency() const {
  double w = 0.0;
  for (const auto& layer : layers_) w = std::max(w, layer.material.characteristic_frequency());
  return w;
}

SlabSpec SlabSpec::real(Material material, double thickness) {
  if (!std::isfinite(thickness) || thickness <= 0.0) throw ConfigurationError("slab thickness must be > 0");
  return SlabSpec(Kind::Real, std::move(material), thickness);
}

double kappa(double n_sq, double xi, double k) {
  if (xi < 0.0 || k < 0.0) throw NumericalDomainError("kappa: xi and k must be >= 0");
  if (xi == 0.0 && k == 0.0) throw NumericalDomainError("kappa: undefined at xi = k = 0");
  const double a = std::sqrt(n_sq) * xi / c;
  return std::hypot(a, k);
}

double rho_interface(Polarization q, const MediumResponse& incident, const MediumResponse& other) {
  const double a = q == Polarization::TM ? other.eps : other.mu;
  const double b = q == Polarization::TM ? incident.eps : incident.mu;
  return (a * incident.kappa - b * other.kappa) / (a * incident.kappa + b * other.kappa);
}

// ---------------------------------------------------------------------------

MirrorResponse::MirrorResponse(const MirrorSpec& mirror, const Material& cavity, double xi)
    : kind_(mirror.kind()), xi_(xi) {
  const double eps = cavity.epsilon(xi);
  const double mu = cavity.permeability(xi);
  cavity_ = {eps, mu, eps * mu, 0.0};
  if (kind_ != MirrorSpec::Kind::Stack) return;
  layers_.reserve(mirror.layers().size());
  for (const auto& layer : mirror.layers()) {
    const double le = layer.material.epsilon(xi);
    const double lm = layer.material.permeability(xi);
    layers_.push_back({le, lm, le * lm, layer.thickness});
  }
}

double MirrorResponse::reflection(Polarization q, double k_sq) const {
  if (kind_ != MirrorSpec::Kind::Stack) return ideal_reflection(q, kind_ == MirrorSpec::Kind::IdealConductive);
  if (xi_ == 0.0 && k_sq == 0.0) throw NumericalDomainError("mirror reflection undefined at xi = k = 0");
  const double xc_sq = (xi_ / c) * (xi_ / c);
  auto side = [&](const LayerResponse& l) { return Side{l.eps, l.mu, l.n_sq, std::sqrt(l.n_sq * xc_sq + k_sq)}; };
  return stack_reflection(q, side(cavity_), layers_, xc_sq, side,
                          [&](const LayerResponse& l) { return side(l).w * l.thickness; });
}

double MirrorResponse::reflection_nonretarded(Polarization q, double k) const {
  if (kind_ != MirrorSpec::Kind::Stack) return ideal_reflection(q, kind_ == MirrorSpec::Kind::IdealConductive);
  auto side = [](const LayerResponse& l) { return Side{l.eps, l.mu, l.n_sq, 1.0}; };
  return stack_reflection(q, side(cavity_), layers_, 0.0, side,
                          [k](const LayerResponse& l) { return k * l.thickness; });
}

double MirrorResponse::reflection_pform(Polarization q, double p) const {
  if (kind_ != MirrorSpec::Kind::Stack) return ideal_reflection(q, kind_ == MirrorSpec::Kind::IdealConductive);
  // kappa_l = n (xi / c) s_l with s_l = sqrt(p^2 - 1 + n_l^2 / n^2); the cavity itself has s = p.
  const double scale_sq = 1.0 / cavity_.n_sq;
  const double kappa_per_s = std::sqrt(cavity_.n_sq) * xi_ / c;
  auto side = [&](const LayerResponse& l) {
    return Side{l.eps, l.mu, l.n_sq, std::sqrt((p - 1.0) * (p + 1.0) + l.n_sq * scale_sq)};
  };
  const Side cavity{cavity_.eps, cavity_.mu, cavity_.n_sq, p};
  return stack_reflection(q, cavity, layers_, scale_sq, side,
                          [&](const LayerResponse& l) { return kappa_per_s * side(l).w * l.thickness; });
}

// ---------------------------------------------------------------------------

SlabResponse::SlabResponse(const SlabSpec& slab, const Material& cavity, double xi)
    : kind_(slab.kind()), xi_(xi), thickness_(slab.thickness()) {
  eps_ = cavity.epsilon(xi);
  mu_ = cavity.permeability(xi);
  n_sq_ = eps_ * mu_;
  if (kind_ == SlabSpec::Kind::Real) {
    eps_s_ = slab.material().epsilon(xi);
    mu_s_ = slab.material().permeability(xi);
  } else {
    eps_s_ = mu_s_ = 0.0;
  }
  n_sq_s_ = eps_s_ * mu_s_;
}

SlabCoefficients SlabResponse::coefficients(Polarization q, double k_sq) const {
  SlabCoefficients out;
  if (kind_ != SlabSpec::Kind::Real) {
    out.r = ideal_reflection(q, kind_ == SlabSpec::Kind::IdealConductive);
    out.t = 0.0;
    out.one_plus_r_sq_minus_t_sq = (1.0 + out.r) * (1.0 + out.r);
    out.r_sq_minus_t_sq = 1.0;
    return out;
  }
  if (xi_ == 0.0 && k_sq == 0.0) throw NumericalDomainError("slab coefficients undefined at xi = k = 0");
  const double xc = xi_ / c;
  const double kz = std::sqrt(n_sq_ * xc * xc + k_sq);
  const double kz_s = std::sqrt(n_sq_s_ * xc * xc + k_sq);
  const double rho = interface_coefficient(q, {eps_, mu_, n_sq_, kz}, {eps_s_, mu_s_, n_sq_s_, kz_s}, xc * xc);
  const double x = 2.0 * kz_s * thickness_;
  const double e = std::exp(-x);
  const double one_minus_e = -std::expm1(-x);
  const double rho_sq = rho * rho;
  const double denom = 1.0 - rho_sq * e;

  out.r = rho * one_minus_e / denom;
  out.t = (1.0 - rho_sq) * std::exp(-0.5 * x) / denom;
  out.one_plus_r_sq_minus_t_sq = (1.0 + rho) * (1.0 + rho) * one_minus_e / denom;
  out.r_sq_minus_t_sq = (rho_sq - e) / denom;
  out.transmission_scale = (1.0 - rho_sq) * (1.0 - rho_sq) / (denom * denom);
  out.transmission_exponent = x;
  return out;
}

// ---------------------------------------------------------------------------

SlabCoefficients slab_rt(Polarization q, const SlabSpec& slab, const Material& cavity, double xi, double k) {
  if (xi < 0.0 || k < 0.0) throw NumericalDomainError("slab_rt: xi and k must be >= 0");
  return SlabResponse(slab, cavity, xi).coefficients(q, k * k);
}

double mirror_reflection(Polarization q, const MirrorSpec& mirror, const Material& cavity, double xi, double k) {
  if (xi < 0.0 || k < 0.0) throw NumericalDomainError("mirror_reflection: xi and k must be >= 0");
  return MirrorResponse(mirror, cavity, xi).reflection(q, k * k);
}

double reflection_nonretarded(Polarization q, const MirrorSpec& mirror, const Material& cavity, double xi,
                              double k) {
  if (xi < 0.0 || k < 0.0) throw NumericalDomainError("reflection_nonretarded: xi and k must be >= 0");
  return MirrorResponse(mirror, cavity, xi).reflection_nonretarded(q, k);
}

double reflection_pform(Polarization q, const MirrorSpec& mirror, const Material& cavity, double xi, double p) {
  if (!(p >= 1.0)) throw NumericalDomainError("reflection_pform: p must be >= 1");
  if (xi < 0.0) throw NumericalDomainError("reflection_pform: xi must be >= 0");
  return MirrorResponse(mirror, cavity, xi).reflection_pform(q, p);
}

}  // namespace casimir
