#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "test_support.hpp"

using namespace casimir;
using casimir::testing::log_uniform;
using casimir::testing::uniform;

TEST(Dispersion, DefaultIsVacuum) {
  DispersionSpec vacuum;
  EXPECT_EQ(vacuum.evaluate(0.0), 1.0);
  EXPECT_EQ(vacuum.evaluate(1e16), 1.0);
  EXPECT_TRUE(vacuum.is_vacuum());
  EXPECT_TRUE(Material::vacuum().is_vacuum());
  EXPECT_FALSE(Material::dielectric(2.0).is_vacuum());
}

TEST(Dispersion, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(DispersionSpec::constant(3.5).evaluate(7e15), 3.5);
  EXPECT_DOUBLE_EQ(DispersionSpec::plasma(2e15).evaluate(2e15), 2.0);
  EXPECT_DOUBLE_EQ(DispersionSpec::plasma(2e15).evaluate(1e15), 5.0);
  // wp^2 / (xi (xi + gamma)) with xi = gamma = wp: 1/2
  EXPECT_DOUBLE_EQ(DispersionSpec::drude(1e15, 1e15).evaluate(1e15), 1.5);
  EXPECT_DOUBLE_EQ(DispersionSpec::lorentz({{1.0, 1e15, 0.0}}).evaluate(1e15), 1.5);
  EXPECT_DOUBLE_EQ(DispersionSpec::lorentz({{2.0, 1e15, 0.0}, {4.0, 1e16, 0.0}}).evaluate(0.0), 7.0);
}

TEST(Dispersion, StaticValues) {
  EXPECT_EQ(DispersionSpec::constant(4.0).static_value(), 4.0);
  EXPECT_EQ(DispersionSpec::lorentz({{2.0, 1e15, 1e13}}).static_value(), 3.0);
  EXPECT_FALSE(DispersionSpec::drude(1e16, 1e14).static_value().has_value());
  EXPECT_FALSE(DispersionSpec::plasma(1e16).static_value().has_value());
  EXPECT_THROW((void)DispersionSpec::drude(1e16, 1e14).evaluate(0.0), StaticLimitError);
  EXPECT_THROW((void)DispersionSpec::plasma(1e16).evaluate(0.0), StaticLimitError);

  const Material metal{DispersionSpec::drude(1e16, 1e14), {}};
  EXPECT_THROW((void)metal.static_values(), StaticLimitError);
  const Material glass{DispersionSpec::constant(4.0), DispersionSpec::constant(2.25)};
  const auto sv = glass.static_values();
  EXPECT_DOUBLE_EQ(sv.n0, 3.0);
}

TEST(Dispersion, RejectsInvalidParameters) {
  EXPECT_THROW(DispersionSpec::constant(0.5), ConfigurationError);
  EXPECT_THROW(DispersionSpec::constant(NAN), ConfigurationError);
  EXPECT_THROW(DispersionSpec::drude(0.0, 1.0), ConfigurationError);
  EXPECT_THROW(DispersionSpec::drude(1e15, -1.0), ConfigurationError);
  EXPECT_THROW(DispersionSpec::plasma(-1e15), ConfigurationError);
  EXPECT_THROW(DispersionSpec::lorentz({{-1.0, 1e15, 0.0}}), ConfigurationError);
  EXPECT_THROW(DispersionSpec::lorentz({{1.0, 0.0, 0.0}}), ConfigurationError);
  EXPECT_THROW((void)DispersionSpec::constant(2.0).evaluate(-1.0), NumericalDomainError);
}

TEST(Dispersion, RandomModelsAreAtLeastOneAndNonincreasing) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const DispersionSpec spec = casimir::testing::random_dispersion(rng);
    double previous = INFINITY;
    double xi = log_uniform(rng, 1e10, 1e12);
    for (int step = 0; step < 40; ++step, xi *= 1.7) {
      const double value = spec.evaluate(xi);
      ASSERT_GE(value, 1.0);
      ASSERT_LE(value, previous * (1.0 + 1e-15));
      previous = value;
    }
  }
}

TEST(Dispersion, RandomModelsApproachVacuumAtHighFrequency) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const DispersionSpec spec = casimir::testing::random_dispersion(rng);
    if (std::holds_alternative<ConstantModel>(spec.model())) continue;
    const double xi = 1e6 * spec.characteristic_frequency();
    EXPECT_LT(spec.evaluate(xi) - 1.0, 1e-9);
  }
}

TEST(Polarizability, OscillatorValues) {
  const OscillatorPolarizability p{2e-30, 1e16};
  EXPECT_DOUBLE_EQ(p.evaluate(0.0), 2e-30);
  EXPECT_DOUBLE_EQ(p.evaluate(1e16), 1e-30);
  const AtomPolarizability atom{{2e-30, 1e16}, {1e-30, 3e15}};
  EXPECT_DOUBLE_EQ(atom.static_value(), 3e-30);
  EXPECT_DOUBLE_EQ(atom.characteristic_frequency(), 1e16);
  EXPECT_NO_THROW(atom.validate());
}

TEST(Polarizability, Validation) {
  EXPECT_THROW((AtomPolarizability{{0.0, 1e16}, {0.0, 1e16}}.validate()), ConfigurationError);
  EXPECT_THROW((AtomPolarizability{{-1e-30, 1e16}, {2e-30, 1e16}}.validate()), ConfigurationError);
  EXPECT_THROW((AtomPolarizability{{1e-30, 0.0}, {0.0, 1e16}}.validate()), ConfigurationError);
}

TEST(DiluteMedium, ResponseIsFourPiNAlpha) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const AtomPolarizability atom{{log_uniform(rng, 1e-31, 1e-29), log_uniform(rng, 1e14, 1e17)},
                                  {uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : log_uniform(rng, 1e-31, 1e-29),
                                   log_uniform(rng, 1e14, 1e17)}};
    const double density = log_uniform(rng, 1e20, 1e27);
    const Material medium = dilute_medium(atom, density);
    const double xi = log_uniform(rng, 1e12, 1e18);
    const double four_pi_n = 4.0 * M_PI * density;
    // eps itself is stored near 1, so eps - 1 carries an absolute rounding error of ~1e-16.
    const double expected_e = four_pi_n * atom.electric.evaluate(xi);
    EXPECT_NEAR(medium.epsilon(xi) - 1.0, expected_e, 4e-16 + 1e-13 * expected_e);
    if (atom.magnetic.static_value == 0.0) {
      EXPECT_EQ(medium.permeability(xi), 1.0);
    } else {
      const double expected_m = four_pi_n * atom.magnetic.evaluate(xi);
      EXPECT_NEAR(medium.permeability(xi) - 1.0, expected_m, 4e-16 + 1e-13 * expected_m);
    }
  }
  EXPECT_THROW(dilute_medium({{1e-30, 1e16}, {}}, -1.0), ConfigurationError);
}
