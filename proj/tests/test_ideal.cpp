#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/ideal.hpp"
#include "test_support.hpp"

using namespace casimir;
using casimir::testing::log_uniform;
using casimir::testing::rel_diff;
using casimir::testing::uniform;

namespace {

const double kVacuumPressure = M_PI * M_PI * constants::hbar * constants::speed_of_light / 240.0;

IdealConfigTag tag(const char* s) { return IdealConfigTag::from_shorthand(s); }

}  // namespace

TEST(Shorthand, MirrorLetterComesFirst) {
  const auto cp = tag("cp");
  EXPECT_EQ(cp.mirror, IdealBody::Conductive);
  EXPECT_EQ(cp.slab, IdealBody::Permeable);
  EXPECT_FALSE(cp.same_type());
  for (const char* s : {"cc", "pp", "cp", "pc"}) EXPECT_EQ(tag(s).shorthand(), s);
  EXPECT_THROW(tag("cx"), std::invalid_argument);
  EXPECT_THROW(tag("ccc"), std::invalid_argument);
}

TEST(ClosedForm, VacuumConductors) {
  EXPECT_LT(rel_diff(ideal_total(1e-6, tag("cc"), 1.0, 1.0), kVacuumPressure / 1e-24), 1e-15);
  EXPECT_EQ(ideal_f2(1e-6, tag("cc"), 1.0, 1.0), 0.0);
  EXPECT_LT(rel_diff(ideal_total(1e-6, tag("pp"), 1.0, 1.0), kVacuumPressure / 1e-24), 1e-15);
  EXPECT_LT(rel_diff(ideal_total(1e-6, tag("cp"), 1.0, 1.0), -7.0 / 8.0 * kVacuumPressure / 1e-24), 1e-15);
}

TEST(ClosedForm, RelationsBetweenConfigurations) {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 1000; ++trial) {
    const double eps0 = log_uniform(rng, 1.0, 1e3);
    const double mu0 = log_uniform(rng, 1.0, 1e2);
    const double d = log_uniform(rng, 1e-9, 1e-4);
    const double n_sq = eps0 * mu0;
    const double base = kVacuumPressure / std::pow(d, 4) * std::sqrt(mu0 / eps0);
    EXPECT_LT(rel_diff(ideal_f1(d, tag("cc"), eps0, mu0), base * (1.0 + 1.0 / n_sq) / 2.0), 1e-14);
    EXPECT_NEAR(ideal_f2(d, tag("cc"), eps0, mu0) / base, (1.0 - 1.0 / n_sq) / 6.0, 1e-14);
    // Swapping both bodies flips only the medium-assisted part.
    EXPECT_DOUBLE_EQ(ideal_f1(d, tag("pp"), eps0, mu0), ideal_f1(d, tag("cc"), eps0, mu0));
    EXPECT_DOUBLE_EQ(ideal_f2(d, tag("pp"), eps0, mu0), -ideal_f2(d, tag("cc"), eps0, mu0));
    // Mixed pairs: screened part -7/8, assisted part 7/8, signed by the mirror.
    EXPECT_LT(rel_diff(ideal_f1(d, tag("cp"), eps0, mu0), -7.0 / 8.0 * ideal_f1(d, tag("cc"), eps0, mu0)), 1e-14);
    EXPECT_LT(rel_diff(ideal_f1(d, tag("pc"), eps0, mu0), -7.0 / 8.0 * ideal_f1(d, tag("cc"), eps0, mu0)), 1e-14);
    EXPECT_LT(rel_diff(ideal_f2(d, tag("cp"), eps0, mu0), 7.0 / 8.0 * ideal_f2(d, tag("cc"), eps0, mu0)), 1e-14);
    EXPECT_LT(rel_diff(ideal_f2(d, tag("pc"), eps0, mu0), -7.0 / 8.0 * ideal_f2(d, tag("cc"), eps0, mu0)), 1e-14);
    // Same-type total: f_vac sqrt(mu0/eps0) (2 + 1/n^2) / 3.
    EXPECT_LT(rel_diff(ideal_total(d, tag("cc"), eps0, mu0), base * (2.0 + 1.0 / n_sq) / 3.0), 1e-14);
    EXPECT_GT(ideal_total(d, tag("cc"), eps0, mu0), 0.0);
    EXPECT_LT(ideal_total(d, tag("pc"), eps0, mu0), 0.0);
  }
}

TEST(ClosedForm, DenseMediumLimit) {
  const double ratio = ideal_total(1e-6, tag("pp"), 1e8, 1.0) / ideal_total(1e-6, tag("cc"), 1e8, 1.0);
  EXPECT_NEAR(ratio, 0.5, 1e-7);
}

TEST(ClosedForm, ScalesAsInverseFourthPower) {
  std::mt19937_64 rng(502);
  for (int trial = 0; trial < 100; ++trial) {
    const double d = log_uniform(rng, 1e-9, 1e-4);
    const double eps0 = uniform(rng, 1.0, 50.0);
    EXPECT_LT(rel_diff(ideal_total(d, tag("cp"), eps0, 1.0), 16.0 * ideal_total(2.0 * d, tag("cp"), eps0, 1.0)),
              1e-14);
  }
}

TEST(Cavity, TotalIsDifferenceOfSides) {
  EXPECT_EQ(ideal_cavity_total(1e-6, 1e-6, tag("cc"), tag("cc"), 2.0, 1.0), 0.0);
  const double one_side = ideal_total(1e-6, tag("cc"), 2.0, 1.0);
  EXPECT_LT(rel_diff(ideal_cavity_total(1e-6, 0.5e-6, tag("cc"), tag("cc"), 2.0, 1.0), 15.0 * one_side), 1e-14);
  EXPECT_THROW(ideal_cavity_total(1e-6, 1e-6, tag("cc"), tag("cp"), 2.0, 1.0), ConfigurationError);
}

TEST(Validation, RejectsBadInputs) {
  EXPECT_THROW(ideal_f1(0.0, tag("cc"), 1.0, 1.0), ConfigurationError);
  EXPECT_THROW(ideal_f1(1e-6, tag("cc"), 0.5, 1.0), ConfigurationError);
  EXPECT_THROW(ideal_f2(1e-6, tag("cc"), 1.0, INFINITY), ConfigurationError);
}
