#include "casimir/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/forces.hpp"
#include "casimir/ideal.hpp"

namespace casimir {
namespace {

constexpr double hbar = constants::hbar;
constexpr double c = constants::speed_of_light;
constexpr double pi = constants::pi;

double relative_error(double measured, double expected) {
  return std::abs(measured - expected) / std::abs(expected);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Collects sub-checks; the criterion passes when all of them do.
class Checks {
 public:
  void relative(const std::string& name, double measured, double expected, double tol) {
    const double err = relative_error(measured, expected);
    add(name, err <= tol, name + "=" + fmt(measured) + " vs " + fmt(expected) + " (rel " + fmt(err) + ")");
  }
  void that(const std::string& name, bool ok, const std::string& info) { add(name, ok, info); }

  [[nodiscard]] bool passed() const { return failures_ == 0; }
  [[nodiscard]] std::string detail() const { return detail_.str(); }

 private:
  void add(const std::string& name, bool ok, const std::string& info) {
    if (!ok) ++failures_;
    if (count_++ > 0) detail_ << "; ";
    detail_ << (ok ? "" : "FAILED ") << (info.empty() ? name : info);
  }
  std::ostringstream detail_;
  int failures_ = 0;
  int count_ = 0;
};

QuadratureSettings settings_for(const AcceptanceOptions& options) {
  QuadratureSettings s;
  if (options.rel_tol) s.rel_tol = *options.rel_tol;
  return s;
}

MirrorSpec ideal_mirror(IdealBody body) {
  return body == IdealBody::Conductive ? MirrorSpec::ideal_conductive() : MirrorSpec::ideal_permeable();
}

SlabSpec ideal_slab(IdealBody body) {
  return body == IdealBody::Conductive ? SlabSpec::ideal_conductive() : SlabSpec::ideal_permeable();
}

CavityConfig ideal_semi_infinite(const std::string& shorthand, Material medium, double d) {
  const IdealConfigTag tag = IdealConfigTag::from_shorthand(shorthand);
  CavityConfig config;
  config.mirror2 = ideal_mirror(tag.mirror);
  config.slab = ideal_slab(tag.slab);
  config.medium = std::move(medium);
  config.semi_infinite = true;
  config.d2 = d;
  return config;
}

/// Least-squares slope of log|f| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& f) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(f[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> decade(double start, std::size_t points) {
  std::vector<double> out;
  for (std::size_t i = 0; i < points; ++i)
    out.push_back(start * std::pow(10.0, static_cast<double>(i) / static_cast<double>(points - 1)));
  return out;
}

Material lorentz_dielectric(double strength, double resonance, double damping = 0.0) {
  return {DispersionSpec::lorentz({{strength, resonance, damping}}), {}};
}

Material lorentz_magnetic(double strength, double resonance, double damping = 0.0) {
  return {{}, DispersionSpec::lorentz({{strength, resonance, damping}})};
}

// --- criteria ---------------------------------------------------------------

CriterionResult criterion(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}


CriterionResult vacuum_limit(const QuadratureSettings& s) {
  CriterionResult r = criterion(1, "vacuum Casimir limit, ideal cc semi-infinite at 1 um");
  const auto start = std::chrono::steady_clock::now();
  const ForceBreakdown b = force_split(ideal_semi_infinite("cc", Material::vacuum(), 1e-6), s);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.measured = b.coefficient(b.f1.value());
  r.expected = pi * pi / 240.0;
  r.tolerance = 1e-3;
  Checks checks;
  checks.relative("C1", r.measured, r.expected, r.tolerance);
  checks.that("f2", b.f2.value() == 0.0, "f2=" + fmt(b.f2.value()) + " (must be exactly 0)");
  checks.that("runtime", seconds < 5.0, "runtime " + fmt(seconds) + " s < 5 s");
  r.passed = checks.passed();
  r.detail = checks.detail();
  return r;
}

CriterionResult four_configurations(const QuadratureSettings& s) {
  CriterionResult r = criterion(2, "four ideal configurations at eps0 = 2 against closed forms");
  const double d = 1e-6;
  const auto start = std::chrono::steady_clock::now();
  Checks checks;
  double total_cc = 0.0, total_pc = 0.0;
  double worst = 0.0;
  for (const char* name : {"cc", "pp", "cp", "pc"}) {
    const IdealConfigTag tag = IdealConfigTag::from_shorthand(name);
    const ForceBreakdown b = force_split(ideal_semi_infinite(name, Material::dielectric(2.0), d), s);
    const double e1 = ideal_f1(d, tag, 2.0, 1.0);
    const double e2 = ideal_f2(d, tag, 2.0, 1.0);
    checks.relative(std::string(name) + ".f1", b.f1.value(), e1, 5e-3);
    checks.relative(std::string(name) + ".f2", b.f2.value(), e2, 5e-3);
    worst = std::max({worst, relative_error(b.f1.value(), e1), relative_error(b.f2.value(), e2)});
    if (tag.mirror != tag.slab)
      checks.that(std::string(name) + ".sign", b.total() < 0.0, std::string(name) + " total " + fmt(b.total()) + " < 0");
    if (std::string(name) == "cc") total_cc = b.total();
    if (std::string(name) == "pc") total_pc = b.total();
  }
  checks.relative("pc/cc", total_pc / total_cc, -7.0 / 8.0, 5e-3);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  checks.that("runtime", seconds < 60.0, "runtime " + fmt(seconds) + " s < 60 s");
  r.measured = total_pc / total_cc;
  r.expected = -7.0 / 8.0;
  r.tolerance = 5e-3;
  r.passed = checks.passed();
  r.detail = "worst component rel " + fmt(worst) + "; " + checks.detail();
  return r;
}

CriterionResult dense_ratio(const QuadratureSettings& s) {
  CriterionResult r = criterion(3, "dense-medium ratio f2/f1, ideal cc at eps0 = 100");
  const double n_sq = 100.0;
  const ForceBreakdown b = force_split(ideal_semi_infinite("cc", Material::dielectric(n_sq), 1e-6), s);
  r.measured = b.f2.value() / b.f1.value();
  r.expected = (1.0 / 3.0) * (1.0 - 1.0 / n_sq) / (1.0 + 1.0 / n_sq);
  r.tolerance = 1e-2;
  r.passed = relative_error(r.measured, r.expected) <= r.tolerance;
  r.detail = "rel " + fmt(relative_error(r.measured, r.expected));
  return r;
}

CriterionResult pp_cc_relation(const QuadratureSettings& s) {
  CriterionResult r = criterion(4, "pp/cc = (n0^2+2)/(2n0^2+1) at n0^2 = 2 and 100");
  Checks checks;
  for (double n_sq : {2.0, 100.0}) {
    const ForceBreakdown pp = force_split(ideal_semi_infinite("pp", Material::dielectric(n_sq), 1e-6), s);
    const ForceBreakdown cc = force_split(ideal_semi_infinite("cc", Material::dielectric(n_sq), 1e-6), s);
    const double ratio = pp.total() / cc.total();
    checks.relative("ratio@" + fmt(n_sq), ratio, (n_sq + 2.0) / (2.0 * n_sq + 1.0), 1e-2);
    if (n_sq == 100.0) {
      checks.relative("dense@100", ratio, 0.5, 2e-2);
      r.measured = ratio;
      r.expected = (n_sq + 2.0) / (2.0 * n_sq + 1.0);
    }
  }
  r.tolerance = 1e-2;
  r.passed = checks.passed();
  r.detail = checks.detail();
  return r;
}

CriterionResult screened_casimir_polder(const QuadratureSettings& s) {
  CriterionResult r = criterion(5, "screened Casimir-Polder force vs ZS, ideal conductive mirror");
  AtomPolarizability atom;
  atom.electric = {1e-30, 1e16};
  const MirrorSpec mirror = MirrorSpec::ideal_conductive();
  const Material vacuum;
  const double omega = transparency_frequency_estimate(mirror, vacuum, atom);
  const double z = 20.0 * c / omega;
  const double alpha0 = atom.static_value();
  const double exact_tol = std::max(10.0 * s.rel_tol, 1e-12);

  Checks checks;
  const AtomForceResult far = atom_force_far(z, mirror, vacuum, atom, s);
  checks.relative("far", far.value, hbar * c * alpha0 / (2.0 * pi * std::pow(z, 5)), exact_tol);
  const AtomForceResult full = atom_force_full(z, mirror, vacuum, atom, s);
  checks.relative("full/far", full.value / far.value, 1.0, 2e-2);
  const AtomForceResult zs_far = zs_atom_force(z, mirror, vacuum, atom, ZsRegime::Far, s);
  checks.relative("zs.far", zs_far.value, 3.0 * hbar * c * alpha0 / (2.0 * pi * std::pow(z, 5)), exact_tol);
  checks.relative("far/zs.far", far.value / zs_far.value, 1.0 / 3.0, 2e-2);
  const AtomForceResult zs_full = zs_atom_force(z, mirror, vacuum, atom, ZsRegime::Full, s);
  checks.relative("full/zs.full", full.value / zs_full.value, 1.0 / 3.0, 2e-2);
  r.measured = full.value / zs_full.value;
  r.expected = 1.0 / 3.0;
  r.tolerance = 2e-2;
  r.passed = checks.passed();
  r.detail = "z = 20 c/Omega = " + fmt(z) + " m; " + checks.detail();
  return r;
}

CriterionResult scaling_exponents(const QuadratureSettings& s) {
  CriterionResult r = criterion(6, "log-log slopes over one decade");
  Checks checks;
  const double tol = 0.05;
  auto slope_check = [&](const std::string& name, const std::vector<double>& x, const std::function<double(double)>& f,
                         double expected) {
    std::vector<double> y;
    for (double xi : x) y.push_back(f(xi));
    const double slope = loglog_slope(x, y);
    checks.that(name, std::abs(slope - expected) <= tol, name + " slope " + fmt(slope) + " vs " + fmt(expected));
    return slope;
  };

  // Ideal slab and mirror in a dispersive medium, far beyond c/Omega so the static values apply.
  const double w0 = 1e15;
  const Material medium = lorentz_dielectric(1.0, w0);
  const double static_d = 30.0 * c / w0;
  r.measured = slope_check(
      "ideal", decade(static_d, 6),
      [&](double d) { return force_split(ideal_semi_infinite("cc", medium, d), s).total(); }, -4.0);

  AtomPolarizability atom;
  atom.electric = {1e-30, 1e16};
  const double atom_far = 20.0 * c / transparency_frequency_estimate(MirrorSpec::ideal_conductive(), {}, atom);
  slope_check(
      "atom.far", decade(atom_far, 6),
      [&](double z) { return atom_force_full(z, MirrorSpec::ideal_conductive(), {}, atom, s).value; }, -5.0);

  const MirrorSpec lorentz_mirror = MirrorSpec::half_space(lorentz_dielectric(3.0, 1e16));
  slope_check(
      "atom.nonretarded", decade(1e-10, 6),
      [&](double z) { return atom_force_nonretarded(z, lorentz_mirror, {}, atom, s).value; }, -2.0);
  slope_check(
      "zs.near", decade(1e-10, 6),
      [&](double z) { return zs_atom_force(z, lorentz_mirror, {}, atom, ZsRegime::Near, s).value; }, -4.0);

  r.expected = -4.0;
  r.tolerance = tol;
  r.passed = checks.passed();
  r.detail = "absolute tolerance; " + checks.detail();
  return r;
}

CriterionResult sign_law(const QuadratureSettings& s) {
  CriterionResult r = criterion(7, "attraction to dielectric, repulsion from permeable mirror, any atom");
  const double w = 1e16;
  const MirrorSpec dielectric = MirrorSpec::half_space(lorentz_dielectric(2.0, w, 1e14));
  const MirrorSpec permeable = MirrorSpec::half_space(lorentz_magnetic(2.0, w, 1e14));
  AtomPolarizability electric, magnetic;
  electric.electric = {1e-30, 2e16};
  magnetic.magnetic = {1e-30, 2e16};
  AtomPolarizability host;
  host.electric = {1e-30, 3e16};
  const Material medium = dilute_medium(host, 1e-3 / (4.0 * pi * host.static_value()));

  Checks checks;
  int cases = 0;
  for (const auto& [name, atom] : {std::pair{"alpha_e", electric}, std::pair{"alpha_m", magnetic}}) {
    for (double z : {1e-9, 1e-8, 1e-7, 1e-6}) {
      const double attract = atom_force_full(z, dielectric, medium, atom, s).value;
      const double repel = atom_force_full(z, permeable, medium, atom, s).value;
      checks.that(name, attract > 0.0 && repel < 0.0,
                  attract > 0.0 && repel < 0.0
                      ? ""
                      : std::string(name) + " z=" + fmt(z) + ": " + fmt(attract) + ", " + fmt(repel));
      cases += 2;
    }
  }
  r.measured = cases;
  r.expected = cases;
  r.passed = checks.passed();
  r.detail = std::to_string(cases) + " sign checks";
  if (!r.passed) r.detail += "; " + checks.detail();
  return r;
}

Material random_material(std::mt19937_64& rng, bool allow_magnetic) {
  std::uniform_real_distribution<double> strength(0.1, 5.0), log_w(13.0, 16.5), unit(0.0, 1.0);
  auto oscillator = [&] { return LorentzOscillator{strength(rng), std::pow(10.0, log_w(rng)), unit(rng) * 1e15}; };
  Material m{DispersionSpec::lorentz({oscillator()}), {}};
  if (allow_magnetic && unit(rng) < 0.3) m.mu = DispersionSpec::lorentz({oscillator()});
  return m;
}

CriterionResult split_consistency(const QuadratureSettings& s) {
  CriterionResult r = criterion(8, "direct force equals f1 + f2 on random cavities");
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> log_d(-7.5, -5.5), unit(0.0, 1.0);
  int ok = 0;
  double worst = 0.0;
  std::string failures;
  const int count = 20;
  for (int i = 0; i < count; ++i) {
    CavityConfig config;
    config.medium = random_material(rng, true);
    config.mirror1 = MirrorSpec::stack({Layer{random_material(rng, true), std::pow(10.0, log_d(rng))},
                                        Layer{random_material(rng, true)}});
    config.mirror2 = MirrorSpec::half_space(random_material(rng, true));
    config.slab = SlabSpec::real(random_material(rng, true), std::pow(10.0, log_d(rng)));
    config.d1 = std::pow(10.0, log_d(rng));
    config.d2 = std::pow(10.0, log_d(rng));
    config.semi_infinite = unit(rng) < 0.3;
    const ForceBreakdown split = force_split(config, s);
    const DirectForce direct = force_total_direct(config, s);
    const double diff = std::abs(direct.total.value() - split.total());
    const double bound = direct.total.error() + split.total_error();
    worst = std::max(worst, bound > 0.0 ? diff / bound : (diff > 0.0 ? HUGE_VAL : 0.0));
    if (diff <= bound && split.converged() && direct.total.converged())
      ++ok;
    else
      failures += " #" + std::to_string(i) + "(diff " + fmt(diff) + ", bound " + fmt(bound) + ")";
  }
  r.measured = ok;
  r.expected = count;
  r.passed = ok == count;
  r.detail = std::to_string(ok) + "/" + std::to_string(count) + " within summed error, worst diff/bound " + fmt(worst) +
             failures;
  return r;
}

CriterionResult medium_density_consistency(const QuadratureSettings& s) {
  CriterionResult r = criterion(9, "medium layer force vs slab force; dilute density = N f_at");
  Checks checks;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_d(-7.3, -6.0), unit(0.0, 1.0);
  int ok = 0;
  for (int i = 0; i < 5; ++i) {
    CavityConfig config;
    config.medium = random_material(rng, true);
    config.mirror1 = MirrorSpec::half_space(random_material(rng, true));
    config.mirror2 = i == 0 ? MirrorSpec::ideal_conductive() : MirrorSpec::half_space(random_material(rng, true));
    config.slab = SlabSpec::real(config.medium, std::pow(10.0, log_d(rng)));
    config.d1 = std::pow(10.0, log_d(rng));
    config.d2 = std::pow(10.0, log_d(rng));
    config.semi_infinite = i == 1;
    const ForceBreakdown split = force_split(config, s);
    const IntegralResult layer = medium_layer_force(config, s);
    const double diff = std::abs(layer.value - split.total());
    const double bound = layer.error_estimate + split.total_error();
    if (diff <= bound) ++ok;
    checks.that("layer#" + std::to_string(i), diff <= bound,
                diff <= bound ? "" : "config " + std::to_string(i) + ": diff " + fmt(diff) + " > " + fmt(bound));
  }

  AtomPolarizability atom;
  atom.electric = {1e-30, 2e16};
  atom.magnetic = {2e-31, 5e15};
  const double number_density = 1e-3 / (4.0 * pi * atom.static_value());
  const Material medium = dilute_medium(atom, number_density);
  const MirrorSpec mirror = MirrorSpec::half_space(lorentz_dielectric(3.0, 1e16, 1e14));
  double worst = 0.0;
  for (double z : {1e-9, 1e-8, 1e-7}) {
    const double density = medium_force_density(mirror, medium, z, s).value;
    const double atom_force = atom_force_full(z, mirror, Material::vacuum(), atom, s).value;
    worst = std::max(worst, relative_error(density, number_density * atom_force));
    checks.relative("dilute@" + fmt(z), density, number_density * atom_force, 1e-2);
  }
  r.measured = ok;
  r.expected = 5;
  r.passed = checks.passed();
  r.detail = std::to_string(ok) + "/5 layer forces within combined error; dilute worst rel " + fmt(worst);
  if (!r.passed) r.detail += "; " + checks.detail();
  return r;
}

CriterionResult quadrature_calibration(const QuadratureSettings& s) {
  CriterionResult r = criterion(10, "semi-infinite calibration integrals");
  struct Case {
    const char* name;
    std::function<double(double)> f;
    double exact;
  };
  const std::vector<Case> cases = {
      {"x^3 e^-x", [](double x) { return x * x * x * std::exp(-x); }, 6.0},
      {"e^-x^2", [](double x) { return std::exp(-x * x); }, std::sqrt(pi) / 2.0},
      {"x^3/(e^x-1)", [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); }, std::pow(pi, 4) / 15.0},
  };
  Checks checks;
  double worst = 0.0;
  for (const auto& k : cases) {
    const IntegralResult res = integrate_semi_infinite(k.f, s);
    const double true_error = std::abs(res.value - k.exact);
    worst = std::max(worst, true_error / k.exact);
    checks.that(k.name, true_error <= 10.0 * s.rel_tol * k.exact,
                std::string(k.name) + " rel " + fmt(true_error / k.exact));
    checks.that(k.name, true_error <= 10.0 * res.error_estimate,
                std::string(k.name) + " true " + fmt(true_error) + " <= 10 x est " + fmt(res.error_estimate));
  }
  r.measured = worst;
  r.expected = 0.0;
  r.tolerance = 10.0 * s.rel_tol;
  r.passed = checks.passed();
  r.detail = checks.detail();
  return r;
}

CriterionResult optics_invariants() {
  CriterionResult r = criterion(11, "passive stacks: |r| <= 1, p-form equals k-form");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0), log_xi(12.0, 17.0), log_d(-9.0, -6.0), log_p(0.0, 2.0);
  std::uniform_int_distribution<int> layers(1, 4);
  const int draws = 10000;
  int violations = 0;
  double worst_identity = 0.0;
  for (int i = 0; i < draws; ++i) {
    std::vector<Layer> stack;
    const int n = layers(rng);
    for (int j = 0; j < n; ++j) {
      Material m = random_material(rng, true);
      if (unit(rng) < 0.2) m.eps = DispersionSpec::drude(std::pow(10.0, 15.0 + unit(rng)), unit(rng) * 1e14);
      stack.push_back({std::move(m), j + 1 == n ? kHalfSpace : std::pow(10.0, log_d(rng))});
    }
    const MirrorSpec mirror = MirrorSpec::stack(std::move(stack));
    const Material cavity = unit(rng) < 0.5 ? Material::vacuum() : random_material(rng, true);
    const double xi = std::pow(10.0, log_xi(rng));
    const double p = std::pow(10.0, log_p(rng));
    const MirrorResponse response(mirror, cavity, xi);
    const double n_sq = cavity.n_squared(xi);
    const double k_sq = n_sq * (xi / c) * (xi / c) * (p * p - 1.0);
    for (Polarization q : kPolarizations) {
      const double rk = response.reflection(q, k_sq);
      const double rp = response.reflection_pform(q, p);
      if (!(std::abs(rk) <= 1.0) || !(std::abs(rp) <= 1.0)) ++violations;
      const double scale = std::max({std::abs(rk), std::abs(rp), 1e-300});
      worst_identity = std::max(worst_identity, std::abs(rk - rp) / scale);
    }
  }
  r.measured = worst_identity;
  r.expected = 0.0;
  r.tolerance = 1e-12;
  r.passed = violations == 0 && worst_identity <= 1e-12;
  r.detail = std::to_string(draws) + " draws, " + std::to_string(violations) + " |r| > 1, worst p/k-form rel " +
             fmt(worst_identity);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& options) {
  const QuadratureSettings s = settings_for(options);
  const std::vector<std::function<CriterionResult()>> criteria = {
      [&] { return vacuum_limit(s); },
      [&] { return four_configurations(s); },
      [&] { return dense_ratio(s); },
      [&] { return pp_cc_relation(s); },
      [&] { return screened_casimir_polder(s); },
      [&] { return scaling_exponents(s); },
      [&] { return sign_law(s); },
      [&] { return split_consistency(s); },
      [&] { return medium_density_consistency(s); },
      [&] { return quadrature_calibration(s); },
      [] { return optics_invariants(); },
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = criteria[i]();
    } catch (const std::exception& e) {
      result.id = id;
      result.title = "criterion " + std::to_string(id);
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

std::string format_criterion(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "[%s] %2d ", r.passed ? "PASS" : "FAIL", r.id);
  char tail[32];
  std::snprintf(tail, sizeof tail, " [%.2f s]", r.seconds);
  return std::string(head) + r.title + ": measured=" + fmt(r.measured) + " expected=" + fmt(r.expected) +
         " tol=" + fmt(r.tolerance) + " (" + r.detail + ")" + tail;
}

}  // namespace casimir
