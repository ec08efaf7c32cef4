#include "casimir/forces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {
namespace {

constexpr double hbar = constants::hbar;
constexpr double c = constants::speed_of_light;
constexpr double pi = constants::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Scale of the imaginary-frequency integrals: the decay scale c / (2 n d) of
/// exp(-2 kappa d), capped by the transparency frequency of the materials.
double frequency_scale(double distance, double transparency, const Material& medium) {
  double scale = c / (2.0 * distance);
  if (transparency > 0.0) scale = std::min(scale, transparency);
  return scale / std::sqrt(medium.n_squared(scale));
}

QuadratureSettings outer_settings(const QuadratureSettings& base, double scale) {
  QuadratureSettings s = base;
  s.scale = scale;
  return s;
}

QuadratureSettings inner_settings(const QuadratureSettings& base, double scale) {
  QuadratureSettings s = tightened_inner(base, base);
  s.scale = scale;
  return s;
}

/// 1 - a e^{-x}, accurate when a -> 1 and x -> 0.
double one_minus_attenuated(double a, double x) {
  if (a == 0.0) return 1.0;
  return (1.0 - a) - a * std::expm1(-x);
}

/// Frequency-resolved state of a cavity; reflection data as cheap functions of k^2.
struct CavityAtFrequency {
  CavityAtFrequency(const CavityConfig& config, double xi_in)
      : config(config),
        xi(xi_in),
        eps(config.medium.epsilon(xi_in)),
        mu(config.medium.permeability(xi_in)),
        n_sq(eps * mu),
        kappa0(std::sqrt(n_sq) * xi_in / c),
        mirror2(config.mirror2, config.medium, xi_in),
        slab(config.slab, config.medium, xi_in) {
    if (!config.semi_infinite) mirror1.emplace(config.mirror1, config.medium, xi_in);
  }

  CavityPoint point(Polarization q, double x) const {
    const double k_sq = x * (x + 2.0 * kappa0);
    CavityPoint p;
    p.q = q;
    p.xi = xi;
    p.kappa = kappa0 + x;
    p.eps = eps;
    p.mu = mu;
    p.slab = slab.coefficients(q, k_sq);
    p.r1 = mirror1 ? mirror1->reflection(q, k_sq) : 0.0;
    p.r2 = mirror2.reflection(q, k_sq);
    p.d1 = config.semi_infinite ? kInf : config.d1;
    p.d2 = config.d2;
    p.semi_infinite = config.semi_infinite;
    return p;
  }

  const CavityConfig& config;
  double xi;
  double eps;
  double mu;
  double n_sq;
  double kappa0;
  std::optional<MirrorResponse> mirror1;
  MirrorResponse mirror2;
  SlabResponse slab;
};

/// (r2 e^{-2 kappa d2} - r1 e^{-2 kappa d1}) / N
double mirror_ratio(const CavityPoint& p) {
  const double n = denominator_N(p.slab, p.semi_infinite ? 0.0 : p.r1, p.r2, p.kappa, p.d1, p.d2);
  double numerator = p.r2 * std::exp(-2.0 * p.kappa * p.d2);
  if (!p.semi_infinite) numerator -= p.r1 * std::exp(-2.0 * p.kappa * p.d1);
  return numerator / n;
}

enum class Part { F1, F2, Direct };

/// Double integral over (xi, kappa - kappa0) of one polarization of one part.
IntegralResult integrate_part(const CavityConfig& config, Polarization q, Part part,
                              const QuadratureSettings& settings) {
  const double d_eff = config.reference_distance();
  const auto outer = outer_settings(settings, frequency_scale(d_eff, config.transparency_frequency_estimate(),
                                                              config.medium));
  const auto inner = inner_settings(settings, 1.0 / (2.0 * d_eff));

  return integrate_nested_semi_infinite(
      [&](double xi) -> IntegralResult {
        const CavityAtFrequency state(config, xi);
        const double n_sq_minus_one = state.n_sq - 1.0;
        const double xi_c_sq = (xi / c) * (xi / c);
        double prefactor = 0.0;
        switch (part) {
          case Part::F1:
            prefactor = hbar / (2.0 * pi * pi);
            break;
          case Part::F2:
            if (n_sq_minus_one == 0.0) return {};
            prefactor = hbar / (8.0 * pi * pi) * xi_c_sq * state.mu * n_sq_minus_one;
            break;
          case Part::Direct:
            prefactor = -hbar / (8.0 * pi * pi) * state.mu;
            break;
        }
        const double screening = q == Polarization::TE ? state.mu : 1.0 / state.eps;
        IntegralResult r = integrate_semi_infinite(
            [&](double x) {
              const CavityPoint p = state.point(q, x);
              switch (part) {
                case Part::F1:
                  return p.kappa * p.kappa * screening * p.slab.r * mirror_ratio(p);
                case Part::F2:
                  return p.slab.one_plus_r_sq_minus_t_sq * polarization_sign(q) * mirror_ratio(p);
                case Part::Direct:
                  return g_difference(p);
              }
              return 0.0;
            },
            inner);
        r.value *= prefactor;
        r.error_estimate *= std::abs(prefactor);
        return r;
      },
      outer);
}

double high_frequency_limit(const DispersionSpec& spec) {
  if (const auto* m = std::get_if<ConstantModel>(&spec.model())) return m->value;
  return 1.0;
}

/// Whether the mirror's contrast with the medium dies out at high frequency.
bool becomes_transparent(const MirrorSpec& mirror, const Material& medium) {
  if (mirror.is_ideal()) return false;
  for (const auto& layer : mirror.layers()) {
    if (high_frequency_limit(layer.material.eps) != high_frequency_limit(medium.eps)) return false;
    if (high_frequency_limit(layer.material.mu) != high_frequency_limit(medium.mu)) return false;
  }
  return true;
}

void require_positive(double z, const char* what) {
  if (!(z > 0.0) || !std::isfinite(z)) throw ConfigurationError(std::string(what) + " must be > 0");
}

bool index_matched(const CavityConfig& config) {
  return config.slab.kind() == SlabSpec::Kind::Real && config.slab.material() == config.medium;
}

/// f_i(z) with optional second mirror (finite cavity of length L).
IntegralResult density_impl(const MirrorSpec& mirror, const MirrorSpec* other, double length,
                            const Material& medium, double z, const QuadratureSettings& settings) {
  require_positive(z, "distance z");
  if (medium.is_vacuum()) return {};
  double transparency = std::max(mirror.characteristic_frequency(), medium.characteristic_frequency());
  if (other) transparency = std::max(transparency, other->characteristic_frequency());
  const auto outer = outer_settings(settings, frequency_scale(z, transparency, medium));
  const auto inner = inner_settings(settings, 1.0 / (2.0 * z));

  return integrate_nested_semi_infinite(
      [&](double xi) -> IntegralResult {
        const double eps = medium.epsilon(xi);
        const double mu = medium.permeability(xi);
        const double n_sq = eps * mu;
        if (n_sq == 1.0) return {};
        const double kappa0 = std::sqrt(n_sq) * xi / c;
        const MirrorResponse near(mirror, medium, xi);
        std::optional<MirrorResponse> far;
        if (other) far.emplace(*other, medium, xi);
        const double prefactor = hbar / (4.0 * pi * pi) * (xi / c) * (xi / c) * mu * (n_sq - 1.0);
        IntegralResult r = integrate_semi_infinite(
            [&](double x) {
              const double kap = kappa0 + x;
              const double k_sq = x * (x + 2.0 * kappa0);
              double sum = 0.0;
              for (Polarization q : kPolarizations) {
                const double ri = near.reflection(q, k_sq);
                double denom = 1.0;
                if (far) denom = one_minus_attenuated(ri * far->reflection(q, k_sq), 2.0 * kap * length);
                sum += polarization_sign(q) * ri / denom;
              }
              return kap * std::exp(-2.0 * kap * z) * sum;
            },
            inner);
        r.value *= prefactor;
        r.error_estimate *= std::abs(prefactor);
        return r;
      },
      outer);
}

AtomForceResult from_integral(const IntegralResult& r, AtomForceRegime regime) {
  return {r.value, r.error_estimate, regime, r.converged, r.evaluations};
}

/// Retarded atom integrals sharing the (xi, kappa) structure of the full formula.
/// kernel(xi, n^2, kappa, r^p, r^s) is multiplied by kappa e^{-2 kappa z}.
template <class Prefactor, class Kernel>
IntegralResult atom_retarded(double z, const MirrorSpec& mirror, const Material& medium,
                             const AtomPolarizability& atom, const QuadratureSettings& settings,
                             const Prefactor& prefactor_of, const Kernel& kernel) {
  const double transparency = transparency_frequency_estimate(mirror, medium, atom);
  const auto outer = outer_settings(settings, frequency_scale(z, transparency, medium));
  const auto inner = inner_settings(settings, 1.0 / (2.0 * z));
  return integrate_nested_semi_infinite(
      [&](double xi) -> IntegralResult {
        const double eps = medium.epsilon(xi);
        const double mu = medium.permeability(xi);
        const double n_sq = eps * mu;
        const double kappa0 = std::sqrt(n_sq) * xi / c;
        const MirrorResponse response(mirror, medium, xi);
        const double prefactor = prefactor_of(xi, eps, mu, atom.evaluate(xi));
        IntegralResult r = integrate_semi_infinite(
            [&](double x) {
              const double kap = kappa0 + x;
              const double k_sq = x * (x + 2.0 * kappa0);
              const double rp = response.reflection(Polarization::TM, k_sq);
              const double rs = response.reflection(Polarization::TE, k_sq);
              return kap * std::exp(-2.0 * kap * z) * kernel(xi, n_sq, kap, rp, rs);
            },
            inner);
        r.value *= prefactor;
        r.error_estimate *= std::abs(prefactor);
        return r;
      },
      outer);
}

/// Nonretarded integrals over (xi, u = 2 k z): prefactor(xi) * int du w(u) kernel(r^p_nr, r^s_nr).
template <class Prefactor, class Kernel>
IntegralResult atom_nonretarded(double z, const MirrorSpec& mirror, const Material& medium,
                                const AtomPolarizability& atom, const QuadratureSettings& settings,
                                const Prefactor& prefactor_of, const Kernel& kernel) {
  const double transparency = transparency_frequency_estimate(mirror, medium, atom);
  const auto outer = outer_settings(settings, transparency);
  const auto inner = inner_settings(settings, 1.0);
  return integrate_nested_semi_infinite(
      [&](double xi) -> IntegralResult {
        const double eps = medium.epsilon(xi);
        const double mu = medium.permeability(xi);
        const MirrorResponse response(mirror, medium, xi);
        const double prefactor = prefactor_of(xi, eps, mu, atom.evaluate(xi));
        IntegralResult r = integrate_semi_infinite(
            [&](double u) {
              const double k = u / (2.0 * z);
              return kernel(u, response.reflection_nonretarded(Polarization::TM, k),
                            response.reflection_nonretarded(Polarization::TE, k));
            },
            inner);
        r.value *= prefactor;
        r.error_estimate *= std::abs(prefactor);
        return r;
      },
      outer);
}

/// 3 hbar c alpha0 / (4 pi n0 eps0 z^5) * int_1^inf dp/p^4 kernel(p, r^p(0,p), r^s(0,p)).
template <class Kernel>
IntegralResult atom_static(double z, const MirrorSpec& mirror, const Material& medium,
                           const AtomPolarizability& atom, const QuadratureSettings& settings, const Kernel& kernel) {
  const StaticValues sv = medium.static_values();
  const MirrorResponse response(mirror, medium, 0.0);
  IntegralResult r = integrate_tail_interval(
      [&](double p) {
        const double p4 = p * p * p * p;
        return kernel(p, response.reflection_pform(Polarization::TM, p),
                      response.reflection_pform(Polarization::TE, p)) /
               p4;
      },
      1.0, settings);
  const double prefactor = 3.0 * hbar * c * atom.static_value() / (4.0 * pi * sv.n0 * sv.eps0 * std::pow(z, 5));
  r.value *= prefactor;
  r.error_estimate *= std::abs(prefactor);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

void CavityConfig::validate() const {
  require_positive(d2, "d2");
  if (!semi_infinite) require_positive(d1, "d1");
}

double CavityConfig::length() const {
  if (semi_infinite) return kInf;
  return d1 + d2 + (slab.is_ideal() ? 0.0 : slab.thickness());
}

double CavityConfig::reference_distance() const { return semi_infinite ? d2 : std::min(d1, d2); }

double CavityConfig::transparency_frequency_estimate() const {
  double w = std::max({mirror2.characteristic_frequency(), medium.characteristic_frequency(),
                       slab.is_ideal() ? 0.0 : slab.material().characteristic_frequency()});
  if (!semi_infinite) w = std::max(w, mirror1.characteristic_frequency());
  return w;
}

double ForceBreakdown::coefficient(double force) const {
  return force * std::pow(reference_distance, 4) / (hbar * c);
}

double DirectForce::coefficient(double force) const {
  return force * std::pow(reference_distance, 4) / (hbar * c);
}

double AtomForceResult::coefficient(double z, double alpha0) const {
  return value * std::pow(z, 5) / (hbar * c * alpha0);
}

double denominator_N(const SlabCoefficients& slab, double r1, double r2, double kappa, double d1, double d2) {
  const double a1 = one_minus_attenuated(slab.r * r1, 2.0 * kappa * d1);
  const double a2 = one_minus_attenuated(slab.r * r2, 2.0 * kappa * d2);
  const double transmitted = slab.transmission_scale * r1 * r2;
  double n = a1 * a2;
  if (transmitted != 0.0) {
    const double x = slab.transmission_exponent + 2.0 * kappa * (d1 + d2);
    n = (a1 * a2 - transmitted) - transmitted * std::expm1(-x);
  }
  if (!(n > 0.0))
    throw DegenerateDenominatorError("cavity resonance/degenerate denominator: N = " + std::to_string(n));
  return n;
}

double g_difference(const CavityPoint& p) {
  const double n_sq = p.eps * p.mu;
  const double screening = p.q == Polarization::TE ? 1.0 : 1.0 / n_sq;
  const double xi_c = p.xi / c;
  const double brace = 4.0 * p.kappa * p.kappa * screening * p.slab.r +
                       xi_c * xi_c * (n_sq - 1.0) * p.slab.one_plus_r_sq_minus_t_sq * polarization_sign(p.q);
  return -brace * mirror_ratio(p);
}

DirectForce force_total_direct(const CavityConfig& config, const QuadratureSettings& settings) {
  config.validate();
  DirectForce out;
  out.reference_distance = config.reference_distance();
  out.total.tm = integrate_part(config, Polarization::TM, Part::Direct, settings);
  out.total.te = integrate_part(config, Polarization::TE, Part::Direct, settings);
  return out;
}

ForceBreakdown force_split(const CavityConfig& config, const QuadratureSettings& settings) {
  config.validate();
  ForceBreakdown out;
  out.reference_distance = config.reference_distance();
  out.f1.tm = integrate_part(config, Polarization::TM, Part::F1, settings);
  out.f1.te = integrate_part(config, Polarization::TE, Part::F1, settings);
  out.f2.tm = integrate_part(config, Polarization::TM, Part::F2, settings);
  out.f2.te = integrate_part(config, Polarization::TE, Part::F2, settings);
  return out;
}

IntegralResult medium_force_density(const CavityConfig& config, MirrorSide side, double z,
                                    const QuadratureSettings& settings) {
  config.validate();
  if (!index_matched(config))
    throw ConfigurationError("medium force density requires a slab index-matched to the cavity medium");
  if (config.semi_infinite) {
    if (side == MirrorSide::Mirror1) throw ConfigurationError("semi-infinite cavity has no mirror 1");
    return density_impl(config.mirror2, nullptr, kInf, config.medium, z, settings);
  }
  const MirrorSpec& near = side == MirrorSide::Mirror1 ? config.mirror1 : config.mirror2;
  const MirrorSpec& far = side == MirrorSide::Mirror1 ? config.mirror2 : config.mirror1;
  return density_impl(near, &far, config.length(), config.medium, z, settings);
}

IntegralResult medium_force_density(const MirrorSpec& mirror, const Material& medium, double z,
                                    const QuadratureSettings& settings) {
  return density_impl(mirror, nullptr, kInf, medium, z, settings);
}

IntegralResult medium_layer_force(const CavityConfig& config, const QuadratureSettings& settings) {
  config.validate();
  if (!index_matched(config))
    throw ConfigurationError("medium layer force requires a slab index-matched to the cavity medium");
  const double ds = config.slab.thickness();
  QuadratureSettings z_settings = settings;
  const QuadratureSettings density_settings = tightened_inner(settings, settings);

  auto layer = [&](MirrorSide side, double d) {
    return integrate_nested_interval(
        [&](double z) { return medium_force_density(config, side, z, density_settings); }, d, d + ds, z_settings);
  };
  IntegralResult result = layer(MirrorSide::Mirror2, config.d2);
  if (!config.semi_infinite) {
    const IntegralResult other = layer(MirrorSide::Mirror1, config.d1);
    result.value -= other.value;
    result.error_estimate += other.error_estimate;
    result.evaluations += other.evaluations;
    result.converged = result.converged && other.converged;
  }
  return result;
}

double transparency_frequency_estimate(const MirrorSpec& mirror, const Material& medium,
                                       const AtomPolarizability& atom) {
  return std::max(
      {mirror.characteristic_frequency(), medium.characteristic_frequency(), atom.characteristic_frequency()});
}

AtomForceResult atom_force_full(double z, const MirrorSpec& mirror, const Material& medium,
                                const AtomPolarizability& atom, const QuadratureSettings& settings) {
  require_positive(z, "atom distance z");
  atom.validate();
  const auto r = atom_retarded(
      z, mirror, medium, atom, settings,
      [](double xi, double, double mu, double alpha) { return hbar / pi * (xi / c) * (xi / c) * mu * alpha; },
      [](double, double, double, double rp, double rs) { return rp - rs; });
  return from_integral(r, AtomForceRegime::Full);
}

AtomForceResult atom_force_nonretarded(double z, const MirrorSpec& mirror, const Material& medium,
                                       const AtomPolarizability& atom, const QuadratureSettings& settings) {
  require_positive(z, "atom distance z");
  atom.validate();
  if (!becomes_transparent(mirror, medium))
    throw NumericalDomainError(
        "nonretarded atom force diverges: the mirror keeps its contrast with the medium at high frequency");
  const auto r = atom_nonretarded(
      z, mirror, medium, atom, settings,
      [z](double xi, double, double mu, double alpha) {
        return hbar / (4.0 * pi * z * z) * (xi / c) * (xi / c) * mu * alpha;
      },
      [](double u, double rp, double rs) { return u * std::exp(-u) * (rp - rs); });
  return from_integral(r, AtomForceRegime::Nonretarded);
}

AtomForceResult atom_force_far(double z, const MirrorSpec& mirror, const Material& medium,
                               const AtomPolarizability& atom, const QuadratureSettings& settings) {
  require_positive(z, "atom distance z");
  atom.validate();
  const auto r = atom_static(z, mirror, medium, atom, settings,
                             [](double, double rp, double rs) { return rp - rs; });
  return from_integral(r, AtomForceRegime::Far);
}

AtomForceResult zs_atom_force(double z, const MirrorSpec& mirror, const Material& medium,
                              const AtomPolarizability& atom, ZsRegime regime, const QuadratureSettings& settings) {
  require_positive(z, "atom distance z");
  atom.validate();
  switch (regime) {
    case ZsRegime::Full: {
      // r^p -> (2 kappa^2 c^2 / (n^2 xi^2) - 1) r^p, with the xi^2 of the prefactor absorbed.
      const auto r = atom_retarded(
          z, mirror, medium, atom, settings,
          [](double, double, double mu, double alpha) { return hbar / (pi * c * c) * mu * alpha; },
          [](double xi, double n_sq, double kap, double rp, double rs) {
            return (2.0 * kap * kap * c * c / n_sq - xi * xi) * rp - xi * xi * rs;
          });
      return from_integral(r, AtomForceRegime::Full);
    }
    case ZsRegime::Near: {
      const auto r = atom_nonretarded(
          z, mirror, medium, atom, settings,
          [z](double, double eps, double, double alpha) { return hbar / (8.0 * pi * std::pow(z, 4)) * alpha / eps; },
          [](double u, double rp, double) { return u * u * u * std::exp(-u) * rp; });
      return from_integral(r, AtomForceRegime::Nonretarded);
    }
    case ZsRegime::Far: {
      const auto r = atom_static(z, mirror, medium, atom, settings,
                                 [](double p, double rp, double rs) { return (2.0 * p * p - 1.0) * rp - rs; });
      return from_integral(r, AtomForceRegime::Far);
    }
  }
  throw std::logic_error("unknown ZS regime");
}

}  // namespace casimir
