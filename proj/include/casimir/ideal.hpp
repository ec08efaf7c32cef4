/**
 * @file ideal.hpp
 * @brief Closed forms for an ideally reflecting slab in front of an ideally
 *        reflecting mirror, with the cavity medium at its static values.
 *
 * Same-type pairs (both conductive or both permeable) carry the zeta(4)
 * mode sum; mixed pairs carry the alternating eta(4) = (7/8) zeta(4), which
 * is where the -7/8 and 7/8 factors come from. Per-area forces in Pa,
 * positive toward the mirror.
 */
#pragma once

#include <string>
#include <string_view>

namespace casimir {

enum class IdealBody { Conductive, Permeable };

struct IdealConfigTag {
  IdealBody slab = IdealBody::Conductive;
  IdealBody mirror = IdealBody::Conductive;

  /// "cc", "pp", "cp" or "pc", mirror letter first: "cp" is a conductive mirror facing a
  /// permeable slab. Throws std::invalid_argument otherwise.
  static IdealConfigTag from_shorthand(std::string_view shorthand);
  [[nodiscard]] std::string shorthand() const;
  [[nodiscard]] bool same_type() const { return slab == mirror; }

  bool operator==(const IdealConfigTag&) const = default;
};

double ideal_f1(double d, IdealConfigTag tag, double eps0, double mu0);
double ideal_f2(double d, IdealConfigTag tag, double eps0, double mu0);
double ideal_total(double d, IdealConfigTag tag, double eps0, double mu0);

/// f(d1, d2) = f_id(d2; tag2) - f_id(d1; tag1); tag_i pairs the slab with mirror i.
double ideal_cavity_total(double d1, double d2, IdealConfigTag tag1, IdealConfigTag tag2, double eps0, double mu0);

}  // namespace casimir
