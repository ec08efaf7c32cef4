#include <gtest/gtest.h>

#include <string>

#include "casimir/config.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

const std::string kMinimalSlab = R"({
  "mode": "slab-force",
  "cavity": {"mirror1": {"type": "ideal_conductive"}, "mirror2": {"type": "ideal_conductive"},
             "slab": {"type": "ideal_conductive"}, "d1_m": 1e-6, "d2_m": 2e-6}
})";

const std::string kFull = R"({
  "mode": "atom-force",
  "cavity": {
    "medium": {"eps": {"model": "lorentz", "oscillators": [{"strength": 0.5, "resonance_rad_per_s": 2e16, "damping_rad_per_s": 1e13}]},
               "mu": {"model": "constant", "value": 1.2}},
    "mirror2": {"type": "stack", "layers": [
      {"material": {"eps": {"model": "plasma", "plasma_frequency_rad_per_s": 1e16}}, "thickness_m": 2e-8},
      {"material": {"eps": {"model": "drude", "plasma_frequency_rad_per_s": 1.37e16, "damping_rad_per_s": 5.32e13}}}
    ]},
    "slab": {"type": "real", "thickness_m": 1e-8, "material": {"eps": {"model": "constant", "value": 2.0}}}
  },
  "atom": {"alpha_e0_m3": 1e-30, "omega_e_rad_per_s": 2e16, "alpha_m0_m3": 1e-31, "omega_m_rad_per_s": 1e15},
  "sweep": {"variable": "z", "start_m": 1e-9, "stop_m": 1e-6, "points": 4, "spacing": "log"},
  "quadrature": {"rel_tol": 1e-6, "abs_tol": 0, "max_evaluations": 50000},
  "output": {"units": "coef", "format": "jsonl", "path": "out.jsonl"}
})";

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, MinimalConfigGetsDefaults) {
  const RunConfig c = parse_config(kMinimalSlab);
  EXPECT_EQ(c.mode, RunMode::SlabForce);
  EXPECT_TRUE(c.cavity.medium.is_vacuum());
  EXPECT_FALSE(c.cavity.semi_infinite);
  EXPECT_DOUBLE_EQ(c.cavity.d1, 1e-6);
  EXPECT_DOUBLE_EQ(c.cavity.d2, 2e-6);
  EXPECT_FALSE(c.sweep.has_value());
  EXPECT_EQ(c.quadrature, QuadratureSettings{});
  EXPECT_EQ(c.output.units, OutputUnits::Both);
  EXPECT_EQ(c.output.format, OutputFormat::Csv);
  EXPECT_TRUE(c.output.path.empty());
}

TEST(Parse, FullConfig) {
  const RunConfig c = parse_config(kFull);
  EXPECT_EQ(c.mode, RunMode::AtomForce);
  EXPECT_TRUE(c.cavity.semi_infinite);
  ASSERT_EQ(c.cavity.mirror2.layers().size(), 2u);
  EXPECT_DOUBLE_EQ(c.cavity.mirror2.layers()[0].thickness, 2e-8);
  EXPECT_DOUBLE_EQ(c.cavity.medium.epsilon(0.0), 1.5);
  EXPECT_DOUBLE_EQ(c.cavity.medium.permeability(0.0), 1.2);
  ASSERT_TRUE(c.atom.has_value());
  EXPECT_DOUBLE_EQ(c.atom->magnetic.static_value, 1e-31);
  ASSERT_TRUE(c.sweep.has_value());
  const auto z = c.sweep->values();
  ASSERT_EQ(z.size(), 4u);
  EXPECT_DOUBLE_EQ(z.front(), 1e-9);
  EXPECT_DOUBLE_EQ(z.back(), 1e-6);
  EXPECT_NEAR(z[1], 1e-8, 1e-22);
  EXPECT_EQ(c.quadrature.max_evaluations, 50000u);
  EXPECT_EQ(c.output.units, OutputUnits::Coefficient);
  EXPECT_EQ(c.output.format, OutputFormat::Jsonl);
  EXPECT_EQ(c.output.path, "out.jsonl");
}

TEST(Parse, RoundTripThroughRendering) {
  for (const std::string& text : {kMinimalSlab, kFull}) {
    const RunConfig c = parse_config(text);
    EXPECT_EQ(parse_config(render_config(c)), c);
    EXPECT_EQ(render_config(parse_config(render_config(c))), render_config(c));
  }
}

TEST(Parse, UnknownKeyIsNamed) {
  const std::string text = R"({"mode": "ideal", "temprature": 300,
    "cavity": {"mirror2": {"type": "ideal_conductive"}, "slab": {"type": "ideal_conductive"}, "semi_infinite": true,
               "d2_m": 1e-6}})";
  EXPECT_THROW(parse_config(text), ConfigSchemaError);
  EXPECT_NE(error_of(text).find("temprature"), std::string::npos) << error_of(text);
}

TEST(Parse, NestedUnknownKeyCarriesItsPath) {
  const std::string text = R"({"mode": "ideal",
    "cavity": {"mirror2": {"type": "ideal_conductive", "colour": "red"}, "slab": {"type": "ideal_conductive"},
               "semi_infinite": true, "d2_m": 1e-6}})";
  EXPECT_NE(error_of(text).find("cavity.mirror2"), std::string::npos) << error_of(text);
}

TEST(Parse, SchemaErrors) {
  EXPECT_THROW(parse_config("{not json"), ConfigSchemaError);
  EXPECT_THROW(parse_config(R"({"cavity": {"mirror2": {"type": "ideal_conductive"}}})"), ConfigSchemaError);
  EXPECT_THROW(parse_config(R"({"mode": "slab-force"})"), ConfigSchemaError);
  // slab is required, and so is mirror1 unless the cavity is semi-infinite
  EXPECT_THROW(parse_config(R"({"mode": "slab-force", "cavity": {"mirror2": {"type": "ideal_conductive"},
    "semi_infinite": true}})"),
               ConfigSchemaError);
  EXPECT_THROW(parse_config(R"({"mode": "slab-force", "cavity": {"mirror2": {"type": "ideal_conductive"},
    "slab": {"type": "ideal_conductive"}}})"),
               ConfigSchemaError);
  EXPECT_THROW(parse_config(R"({"mode": "warp", "cavity": {}})"), ConfigSchemaError);
  EXPECT_THROW(parse_config(R"({"mode": "slab-force", "cavity": {"mirror2": {"type": "mirror"}}})"),
               ConfigSchemaError);
  EXPECT_THROW(parse_config(R"({"mode": "slab-force", "cavity": {"mirror2": {"type": "ideal_conductive"},
    "d2_m": "far"}})"),
               ConfigSchemaError);
  // atom modes need an atom
  EXPECT_THROW(parse_config(R"({"mode": "atom-force", "z_m": 1e-7,
    "cavity": {"mirror2": {"type": "ideal_conductive"}, "slab": {"type": "ideal_conductive"}}})"),
               ConfigSchemaError);
}

TEST(Parse, SweepValidation) {
  auto with_sweep = [](const std::string& sweep) {
    return R"({"mode": "slab-force", "cavity": {"mirror1": {"type": "ideal_conductive"},
      "mirror2": {"type": "ideal_conductive"}, "slab": {"type": "ideal_conductive"}, "d1_m": 1e-6, "d2_m": 1e-6},
      "sweep": )" +
           sweep + "}";
  };
  EXPECT_NO_THROW(parse_config(with_sweep(R"({"variable": "d1", "start_m": 1e-7, "stop_m": 1e-6, "points": 3})")));
  EXPECT_ANY_THROW(parse_config(with_sweep(R"({"variable": "d2", "start_m": 1e-7, "stop_m": 1e-6, "points": 0})")));
  EXPECT_ANY_THROW(parse_config(with_sweep(R"({"variable": "d2", "start_m": 1e-6, "stop_m": 1e-7, "points": 3})")));
  EXPECT_ANY_THROW(parse_config(with_sweep(R"({"variable": "d2", "start_m": -1e-7, "stop_m": 1e-6, "points": 3})")));
  EXPECT_ANY_THROW(parse_config(with_sweep(R"({"variable": "z", "start_m": 1e-7, "stop_m": 1e-6, "points": 3})")));
}

TEST(Parse, SweptDistanceNeedNotBeGiven) {
  const RunConfig c = parse_config(R"({"mode": "slab-force",
    "cavity": {"mirror1": {"type": "ideal_conductive"}, "mirror2": {"type": "ideal_conductive"},
               "slab": {"type": "ideal_conductive"}, "d2_m": 1e-6},
    "sweep": {"variable": "d1", "start_m": 1e-7, "stop_m": 1e-6, "points": 3}})");
  EXPECT_EQ(c.sweep->variable, SweepVariable::D1);
  EXPECT_THROW(parse_config(R"({"mode": "slab-force",
    "cavity": {"mirror1": {"type": "ideal_conductive"}, "mirror2": {"type": "ideal_conductive"},
               "slab": {"type": "ideal_conductive"}, "d2_m": 1e-6},
    "sweep": {"variable": "d2", "start_m": 1e-7, "stop_m": 1e-6, "points": 3}})"),
               ConfigSchemaError);
}

TEST(Parse, PhysicalErrorsAreConfigurationErrors) {
  const std::string cavity_head =
      R"({"mode": "slab-force", "cavity": {"mirror2": {"type": "ideal_conductive"}, "semi_infinite": true, )";
  EXPECT_THROW(parse_config(cavity_head + R"("slab": {"type": "ideal_conductive"},
    "medium": {"eps": {"model": "constant", "value": 0.5}}}})"),
               ConfigurationError);
  EXPECT_THROW(parse_config(cavity_head + R"("slab": {"type": "ideal_conductive"}, "d2_m": -1}})"),
               ConfigurationError);
  EXPECT_THROW(parse_config(cavity_head + R"("slab": {"type": "real", "thickness_m": 0,
    "material": {"eps": {"model": "constant", "value": 2}}}}})"),
               ConfigurationError);
}

TEST(Parse, ModeFromCaller) {
  const std::string no_mode = R"({"cavity": {"mirror2": {"type": "ideal_conductive"}, "slab": {"type": "ideal_conductive"}, "semi_infinite": true,
               "d2_m": 1e-6}})";
  EXPECT_EQ(parse_config(no_mode, RunMode::Ideal).mode, RunMode::Ideal);
  EXPECT_THROW(parse_config(kMinimalSlab, RunMode::Density), ConfigSchemaError);
  EXPECT_EQ(parse_config(kMinimalSlab, RunMode::SlabForce).mode, RunMode::SlabForce);
}

TEST(Sweep, LinearAndLogSpacing) {
  SweepSpec lin{SweepVariable::D2, 1.0, 2.0, 5, Spacing::Linear};
  const auto v = lin.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_DOUBLE_EQ(v[2], 1.5);
  EXPECT_EQ(v.back(), 2.0);
  SweepSpec log{SweepVariable::Z, 1e-9, 1e-5, 5, Spacing::Log};
  const auto w = log.values();
  EXPECT_NEAR(w[2] / 1e-7, 1.0, 1e-14);
  EXPECT_EQ(w.back(), 1e-5);
  SweepSpec single{SweepVariable::D1, 3e-7, 4e-7, 1, Spacing::Log};
  EXPECT_EQ(single.values(), std::vector<double>{3e-7});
}

TEST(Names, ModeStringsRoundTrip) {
  for (RunMode m : {RunMode::SlabForce, RunMode::Ideal, RunMode::Density, RunMode::AtomForce, RunMode::ZsCompare,
                    RunMode::Validate})
    EXPECT_EQ(run_mode_from_string(to_string(m)), m);
  for (OutputUnits u : {OutputUnits::SI, OutputUnits::Coefficient, OutputUnits::Both})
    EXPECT_EQ(output_units_from_string(to_string(u)), u);
  EXPECT_THROW(run_mode_from_string("forces"), std::invalid_argument);
}
