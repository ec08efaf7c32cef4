#include "casimir/ideal.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {
namespace {

constexpr double hbar_c_pi_sq = constants::hbar * constants::speed_of_light * constants::pi * constants::pi;

// eta(4) / zeta(4): mixed conductive/permeable pairs see alternating mode sums.
constexpr double kMixedPairFactor = 7.0 / 8.0;

void check(double d, double eps0, double mu0) {
  if (!(d > 0.0)) throw ConfigurationError("ideal force: distance must be > 0");
  if (!(eps0 >= 1.0) || !(mu0 >= 1.0) || !std::isfinite(eps0) || !std::isfinite(mu0))
    throw ConfigurationError("ideal force: static eps0, mu0 must be finite and >= 1");
}

char letter(IdealBody b) { return b == IdealBody::Conductive ? 'c' : 'p'; }

IdealBody body(char ch) {
  if (ch == 'c') return IdealBody::Conductive;
  if (ch == 'p') return IdealBody::Permeable;
  throw std::invalid_argument(std::string("ideal configuration letter must be 'c' or 'p', got '") + ch + "'");
}

}  // namespace

IdealConfigTag IdealConfigTag::from_shorthand(std::string_view shorthand) {
  if (shorthand.size() != 2) throw std::invalid_argument("ideal configuration must be one of cc, pp, cp, pc");
  IdealConfigTag tag;
  tag.mirror = body(shorthand[0]);
  tag.slab = body(shorthand[1]);
  return tag;
}

std::string IdealConfigTag::shorthand() const { return {letter(mirror), letter(slab)}; }

double ideal_f1(double d, IdealConfigTag tag, double eps0, double mu0) {
  check(d, eps0, mu0);
  const double n0_sq = eps0 * mu0;
  const double pair = tag.same_type() ? 1.0 : -kMixedPairFactor;
  return pair * hbar_c_pi_sq / (480.0 * std::pow(d, 4)) * std::sqrt(mu0 / eps0) * (1.0 + 1.0 / n0_sq);
}

double ideal_f2(double d, IdealConfigTag tag, double eps0, double mu0) {
  check(d, eps0, mu0);
  const double n0_sq = eps0 * mu0;
  const double sign = tag.mirror == IdealBody::Conductive ? 1.0 : -1.0;
  const double pair = tag.same_type() ? 1.0 : kMixedPairFactor;
  return sign * pair * hbar_c_pi_sq / (1440.0 * std::pow(d, 4)) * std::sqrt(mu0 / eps0) * (1.0 - 1.0 / n0_sq);
}

double ideal_total(double d, IdealConfigTag tag, double eps0, double mu0) {
  return ideal_f1(d, tag, eps0, mu0) + ideal_f2(d, tag, eps0, mu0);
}

double ideal_cavity_total(double d1, double d2, IdealConfigTag tag1, IdealConfigTag tag2, double eps0,
                          double mu0) {
  if (tag1.slab != tag2.slab) throw ConfigurationError("ideal cavity: both tags must describe the same slab");
  return ideal_total(d2, tag2, eps0, mu0) - ideal_total(d1, tag1, eps0, mu0);
}

}  // namespace casimir
