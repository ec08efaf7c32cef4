#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/optics.hpp"
#include "test_support.hpp"

using namespace casimir;
using casimir::testing::log_uniform;
using casimir::testing::rel_diff;
using casimir::testing::uniform;

namespace {

constexpr double c = constants::speed_of_light;

double naive_kappa(const Material& m, double xi, double k) {
  return std::sqrt(m.n_squared(xi) * xi * xi / (c * c) + k * k);
}

// (b k_a - a k_b) / (b k_a + a k_b) with a, b = eps (TM) or mu (TE).
double naive_rho(Polarization q, const Material& from, const Material& into, double xi, double k) {
  const double a = q == Polarization::TM ? from.epsilon(xi) : from.permeability(xi);
  const double b = q == Polarization::TM ? into.epsilon(xi) : into.permeability(xi);
  const double ka = naive_kappa(from, xi, k);
  const double kb = naive_kappa(into, xi, k);
  return (b * ka - a * kb) / (b * ka + a * kb);
}

// The textbook forms lose a few digits to cancellation when |r| is close to 1.
constexpr double kNaiveTol = 2e-12;

}  // namespace

TEST(Kappa, Values) {
  EXPECT_DOUBLE_EQ(kappa(1.0, 0.0, 3.0), 3.0);
  EXPECT_DOUBLE_EQ(kappa(4.0, 3.0 * c, 0.0), 6.0);
  EXPECT_DOUBLE_EQ(kappa(1.0, 3.0 * c, 4.0), 5.0);
  EXPECT_THROW((void)kappa(1.0, 0.0, 0.0), NumericalDomainError);
}

TEST(Interface, MatchesTextbookFormulaAndIsAntisymmetric) {
  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 500; ++trial) {
    const Material a = casimir::testing::random_material(rng);
    const Material b = casimir::testing::random_material(rng);
    const double xi = log_uniform(rng, 1e12, 1e17);
    const double k = log_uniform(rng, 1e3, 1e10);
    for (Polarization q : kPolarizations) {
      const MediumResponse ra{a.epsilon(xi), a.permeability(xi), naive_kappa(a, xi, k)};
      const MediumResponse rb{b.epsilon(xi), b.permeability(xi), naive_kappa(b, xi, k)};
      const double forward = rho_interface(q, ra, rb);
      EXPECT_NEAR(forward, naive_rho(q, a, b, xi, k), 1e-14);
      EXPECT_NEAR(forward, -rho_interface(q, rb, ra), 1e-15);
      EXPECT_LE(std::abs(forward), 1.0);
    }
  }
}

TEST(Mirror, IdealMirrorsReflectWithFixedSign) {
  const Material medium = Material::dielectric(2.0);
  for (double k : {0.0, 1e6, 1e9}) {
    EXPECT_EQ(mirror_reflection(Polarization::TM, MirrorSpec::ideal_conductive(), medium, 1e15, k), 1.0);
    EXPECT_EQ(mirror_reflection(Polarization::TE, MirrorSpec::ideal_conductive(), medium, 1e15, k), -1.0);
    EXPECT_EQ(mirror_reflection(Polarization::TM, MirrorSpec::ideal_permeable(), medium, 1e15, k), -1.0);
    EXPECT_EQ(mirror_reflection(Polarization::TE, MirrorSpec::ideal_permeable(), medium, 1e15, k), 1.0);
  }
}

TEST(Mirror, HalfSpaceEqualsSingleInterface) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    const Material cavity = casimir::testing::random_material(rng);
    const Material wall = casimir::testing::random_material(rng);
    const double xi = log_uniform(rng, 1e12, 1e17);
    const double k = log_uniform(rng, 1e3, 1e10);
    for (Polarization q : kPolarizations) {
      const double r = mirror_reflection(q, MirrorSpec::half_space(wall), cavity, xi, k);
      EXPECT_NEAR(r, naive_rho(q, cavity, wall, xi, k), kNaiveTol);
    }
  }
}

TEST(Mirror, FilmOnSubstrateMatchesAiryFormula) {
  std::mt19937_64 rng(203);
  for (int trial = 0; trial < 300; ++trial) {
    const Material cavity = casimir::testing::random_static_material(rng);
    const Material film = casimir::testing::random_material(rng);
    const Material substrate = casimir::testing::random_material(rng);
    const double d = log_uniform(rng, 1e-9, 1e-6);
    const double xi = log_uniform(rng, 1e12, 1e16);
    const double k = log_uniform(rng, 1e4, 1e9);
    const auto mirror = MirrorSpec::stack({{film, d}, {substrate, kHalfSpace}});
    for (Polarization q : kPolarizations) {
      const double r01 = naive_rho(q, cavity, film, xi, k);
      const double r12 = naive_rho(q, film, substrate, xi, k);
      const double e = std::exp(-2.0 * naive_kappa(film, xi, k) * d);
      const double airy = (r01 + r12 * e) / (1.0 + r01 * r12 * e);
      EXPECT_NEAR(mirror_reflection(q, mirror, cavity, xi, k), airy, kNaiveTol);
    }
  }
}

TEST(Mirror, RandomStacksReflectAtMostUnity) {
  std::mt19937_64 rng(204);
  for (int trial = 0; trial < 2000; ++trial) {
    const Material cavity = casimir::testing::random_static_material(rng);
    const MirrorSpec mirror = casimir::testing::random_stack(rng);
    const double xi = log_uniform(rng, 1e10, 1e18);
    const double k = uniform(rng, 0.0, 1.0) < 0.1 ? 0.0 : log_uniform(rng, 1e2, 1e11);
    for (Polarization q : kPolarizations) {
      const double r = mirror_reflection(q, mirror, cavity, xi, k);
      ASSERT_TRUE(std::isfinite(r));
      ASSERT_LE(std::abs(r), 1.0);
    }
  }
}

TEST(Mirror, PFormAgreesWithWaveVectorForm) {
  std::mt19937_64 rng(205);
  for (int trial = 0; trial < 1000; ++trial) {
    const Material cavity = casimir::testing::random_static_material(rng);
    const MirrorSpec mirror = casimir::testing::random_stack(rng);
    const double xi = log_uniform(rng, 1e11, 1e17);
    const double p = 1.0 + log_uniform(rng, 1e-6, 1e3);
    const double k = std::sqrt(cavity.n_squared(xi)) * xi / c * std::sqrt((p - 1.0) * (p + 1.0));
    for (Polarization q : kPolarizations) {
      EXPECT_NEAR(reflection_pform(q, mirror, cavity, xi, p), mirror_reflection(q, mirror, cavity, xi, k), 1e-12);
    }
  }
}

TEST(Mirror, NonretardedInterfaceIsStaticContrast) {
  const Material cavity = Material::dielectric(2.0);
  const Material wall{DispersionSpec::constant(5.0), DispersionSpec::constant(3.0)};
  const auto mirror = MirrorSpec::half_space(wall);
  EXPECT_NEAR(reflection_nonretarded(Polarization::TM, mirror, cavity, 1e15, 1e7), 3.0 / 7.0, 1e-15);
  EXPECT_NEAR(reflection_nonretarded(Polarization::TE, mirror, cavity, 1e15, 1e7), 2.0 / 4.0, 1e-15);
  // The full coefficient tends to the nonretarded one when k dominates n xi / c.
  EXPECT_NEAR(mirror_reflection(Polarization::TM, mirror, cavity, 1e10, 1e9), 3.0 / 7.0, 1e-9);
}

TEST(Mirror, StackValidation) {
  EXPECT_THROW(MirrorSpec::stack({}), ConfigurationError);
  EXPECT_THROW(MirrorSpec::stack({{Material::dielectric(2.0), 1e-7}}), ConfigurationError);
  EXPECT_THROW(MirrorSpec::stack({{Material::dielectric(2.0), -1e-7}, {Material::dielectric(3.0), kHalfSpace}}),
               ConfigurationError);
  EXPECT_THROW(SlabSpec::real(Material::dielectric(2.0), 0.0), ConfigurationError);
}

TEST(Slab, IndexMatchedSlabIsTransparent) {
  const Material medium{DispersionSpec::lorentz({{2.0, 1e16, 0.0}}), {}};
  const auto slab = SlabSpec::real(medium, 1e-7);
  for (Polarization q : kPolarizations) {
    const auto rt = slab_rt(q, slab, medium, 3e15, 2e7);
    EXPECT_EQ(rt.r, 0.0);
    const double kap = naive_kappa(medium, 3e15, 2e7);
    EXPECT_NEAR(rt.t, std::exp(-kap * 1e-7), 1e-15);
  }
}

TEST(Slab, IdealSlabs) {
  const auto rt_c = slab_rt(Polarization::TM, SlabSpec::ideal_conductive(), Material::vacuum(), 1e15, 1e6);
  EXPECT_EQ(rt_c.r, 1.0);
  EXPECT_EQ(rt_c.t, 0.0);
  const auto rt_p = slab_rt(Polarization::TM, SlabSpec::ideal_permeable(), Material::vacuum(), 1e15, 1e6);
  EXPECT_EQ(rt_p.r, -1.0);
}

TEST(Slab, CombinationsMatchDirectFormulas) {
  std::mt19937_64 rng(206);
  for (int trial = 0; trial < 500; ++trial) {
    const Material cavity = casimir::testing::random_static_material(rng);
    const Material inside = casimir::testing::random_material(rng);
    const double d = log_uniform(rng, 1e-9, 1e-6);
    const double xi = log_uniform(rng, 1e12, 1e16);
    const double k = log_uniform(rng, 1e4, 1e9);
    for (Polarization q : kPolarizations) {
      const auto rt = slab_rt(q, SlabSpec::real(inside, d), cavity, xi, k);
      const double rho = naive_rho(q, cavity, inside, xi, k);
      const double e = std::exp(-2.0 * naive_kappa(inside, xi, k) * d);
      const double denom = 1.0 - rho * rho * e;
      EXPECT_NEAR(rt.r, rho * (1.0 - e) / denom, kNaiveTol);
      EXPECT_NEAR(rt.t, (1.0 - rho * rho) * std::sqrt(e) / denom, kNaiveTol);
      EXPECT_NEAR(rt.one_plus_r_sq_minus_t_sq, (1.0 + rt.r) * (1.0 + rt.r) - rt.t * rt.t, 1e-12);
      EXPECT_NEAR(rt.r_sq_minus_t_sq, rt.r * rt.r - rt.t * rt.t, 1e-12);
      EXPECT_NEAR(rt.transmission_scale * std::exp(-rt.transmission_exponent), rt.t * rt.t, 1e-13);
      EXPECT_LE(std::abs(rt.r) + rt.t, 1.0 + 1e-15);
    }
  }
}
