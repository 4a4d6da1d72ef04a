#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "skewflow/axioms.hpp"
#include "skewflow/builtins.hpp"
#include "skewflow/errors.hpp"
#include "skewflow/generator.hpp"
#include "skewflow/splitting.hpp"
#include "skewflow/stability.hpp"
#include "support.hpp"

namespace skewflow {
namespace {

using testing::integer_horizon;

TEST(Builtins, NamesAndDescriptors) {
  const auto names = builtin_names();
  EXPECT_EQ(names.size(), 7u);
  for (const auto& name : names) {
    const auto fx = builtin(name);
    EXPECT_FALSE(fx.descriptor.expected.empty()) << name;
    EXPECT_FALSE(fx.descriptor.source.empty()) << name;
  }
  EXPECT_THROW(builtin("ex_nope"), InputError);
  BuiltinParams bad;
  bad.variant = "sideways";
  EXPECT_THROW(builtin("ex_ce", bad), InputError);
}

TEST(Builtins, ExNuedStatedConstants) {
  const auto fx = builtin("ex_nued");
  EXPECT_EQ(fx.descriptor.constants.at("nu"), 1.0);
  EXPECT_EQ(fx.descriptor.parameters.at("N(u)"), "e^{6u}");
  EXPECT_NE(fx.descriptor.source.find("worked example"), std::string::npos);
}

TEST(Builtins, ExNues1AndExNueis1AtIntegers) {
  const auto nues = builtin("ex_nues1").system;
  const auto nueis = builtin("ex_nueis1").system;
  EXPECT_NEAR(nues.evaluate(2, 0, {0}).matrix()(0, 0), std::exp(-6.0), 1e-15);
  for (int m = 0; m <= 8; ++m) {
    for (int n = 0; n <= m; ++n) {
      EXPECT_NEAR(std::log(nues.evaluate(m, n, {0}).matrix()(0, 0)), -3.0 * (m - n), 1e-12);
      EXPECT_NEAR(std::log(nueis.evaluate(m, n, {0}).matrix()(0, 0)), 1.0 * (m - n), 1e-12);
    }
  }
}

TEST(Builtins, ExCeAxiomsByVariant) {
  const auto grid = random_triples(50, 8.0, 11, false);
  const std::vector<StatePoint> states{{0}, {0.5}, {3}};
  BuiltinParams p;
  EXPECT_TRUE(verify_axioms(builtin("ex_ce", p).system, grid, states).passed);
  p.limit = 2.5;
  EXPECT_TRUE(verify_axioms(builtin("ex_ce", p).system, grid, states).passed);
  p.variant = "literal";
  EXPECT_FALSE(verify_axioms(builtin("ex_ce", p).system, grid, states).passed);
  // x(0) = f(u) moves with the flow unless f is constant
  BuiltinParams sat;
  sat.base = "saturating";
  sat.limit = 2.0;
  EXPECT_FALSE(verify_axioms(builtin("ex_ce", sat).system, grid, states).passed);
}

TEST(BaseFunction, Integrals) {
  BuiltinParams c;
  c.limit = 1.5;
  EXPECT_DOUBLE_EQ(BaseFunction(c).integral(1, 3), 3.0);
  BuiltinParams s;
  s.base = "saturating";
  s.limit = 2.0;
  const BaseFunction sat(s);
  EXPECT_DOUBLE_EQ(sat(0), 1.0);
  // int_a^b 2 - e^{-t} dt
  EXPECT_NEAR(sat.integral(0.5, 2.0), 2 * 1.5 - (std::exp(-0.5) - std::exp(-2.0)), 1e-14);
  BuiltinParams t;
  t.base = "table";
  t.table = {{0, 1}, {1, 2}, {3, 2.5}};
  const BaseFunction tab(t);
  EXPECT_DOUBLE_EQ(tab.limit(), 2.5);
  EXPECT_DOUBLE_EQ(tab(2.0), 2.25);
  EXPECT_DOUBLE_EQ(tab(10.0), 2.5);
  // trapezoids are exact for piecewise-linear integrands
  EXPECT_NEAR(tab.integral(0, 5), 1.5 + 2 * 2.25 + 2 * 2.5, 1e-9);
  EXPECT_NEAR(tab.integral(0.5, 2), (1.5 + 2) / 2 * 0.5 + (2 + 2.25) / 2, 1e-9);
  BuiltinParams bad;
  bad.base = "saturating";
  bad.limit = 0.5;
  EXPECT_THROW(BaseFunction{bad}, InputError);
}

TEST(Builtins, ExNuetCharacteristicsAsWritten) {
  const auto grid = random_triples(100, 6.0, 5, false);
  const std::vector<StatePoint> states{{0}, {1}, {2}};
  const auto checks = check_ex_nuet_characteristics(BuiltinParams{}, grid, states);
  ASSERT_EQ(checks.size(), 4u);
  EXPECT_EQ(checks[0].name, "N1");
  EXPECT_TRUE(checks[0].validates);
  EXPECT_FALSE(checks[1].validates);  // N2(u) = e^{-2lu} < 1
  EXPECT_TRUE(checks[2].validates);
  EXPECT_FALSE(checks[3].validates);  // N4(u) = e^{-lu} < 1
}

TEST(Generator, DeterministicPerSeed) {
  GeneratorSpec spec;
  spec.seed = 42;
  spec.conjugate = true;
  spec.steps = 16;
  spec.blocks = {{1, -2, -1, BlockRole::stable}, {1, 1, 2, BlockRole::unstable}};
  const auto a = random_block_cocycle(spec);
  const auto b = random_block_cocycle(spec);
  EXPECT_EQ(a.similarity, b.similarity);
  EXPECT_EQ(a.log_rates, b.log_rates);
  for (int k = 0; k < 16; ++k) {
    EXPECT_EQ(a.fixture.system.evaluate(k + 1, k, {0}).matrix(), b.fixture.system.evaluate(k + 1, k, {0}).matrix());
  }
  spec.seed = 43;
  EXPECT_NE(random_block_cocycle(spec).log_rates, a.log_rates);
}

TEST(Generator, RatesAndConditioning) {
  GeneratorSpec spec;
  spec.conjugate = true;
  spec.steps = 32;
  spec.blocks = {{2, -2, -1, BlockRole::stable}, {1, -0.1, 0.1, BlockRole::central}, {1, 0.5, 1, BlockRole::unstable}};
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    spec.seed = seed;
    const auto g = random_block_cocycle(spec);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.similarity);
    const auto sv = svd.singularValues();
    EXPECT_LE(sv(0) / sv(sv.size() - 1), 20.0);
    for (const auto& step : g.log_rates) {
      for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
        EXPECT_GE(step[b], spec.blocks[b].lo);
        EXPECT_LE(step[b], spec.blocks[b].hi);
      }
    }
    EXPECT_EQ(g.planted[0], std::make_pair(-2.0, -1.0));
  }
}

TEST(Generator, Validation) {
  GeneratorSpec spec;
  EXPECT_THROW(random_block_cocycle(spec), InputError);
  spec.blocks = {{1, -1, 0.5, BlockRole::stable}};
  EXPECT_THROW(random_block_cocycle(spec), InputError);
  spec.blocks = {{1, 0.1, 0.5, BlockRole::central}};
  EXPECT_THROW(random_block_cocycle(spec), InputError);
  spec.blocks = {{1, -0.5, 0.5, BlockRole::unstable}};
  EXPECT_THROW(random_block_cocycle(spec), InputError);
  EXPECT_THROW(parse_block_role("neutral"), InputError);
  spec.blocks = {{1, -1, -0.5, BlockRole::stable}};
  spec.steps = 4;
  EXPECT_THROW(random_block_cocycle(spec).fixture.system.evaluate(5, 0, {0}), DomainError);
}

TEST(Generator, PlantedDichotomySeed7) {
  GeneratorSpec spec;
  spec.seed = 7;
  spec.blocks = {{1, -2, -1, BlockRole::stable}, {1, 1, 2, BlockRole::unstable}};
  const auto g = random_block_cocycle(spec);
  EXPECT_TRUE(dichotomy_certificate(g.fixture.system, *g.fixture.family, -1.0, 1.0,
                                    integer_horizon(g.fixture.system))
                  .holds());
}

TEST(Generator, CentralRateZeroIsIdentity) {
  GeneratorSpec spec;
  spec.blocks = {{2, 0, 0, BlockRole::central}};
  const auto sys = random_block_cocycle(spec).fixture.system;
  EXPECT_EQ(sys.evaluate(17, 3, {0}).matrix(), Eigen::MatrixXd::Identity(2, 2));
}

TEST(Generator, PlantedTruthSoundness) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratorSpec stable;
    stable.seed = seed;
    stable.conjugate = true;
    stable.steps = 24;
    stable.blocks = {{1, -2, -1, BlockRole::stable}, {1, -1.5, -0.5, BlockRole::stable}};
    const auto s = random_block_cocycle(stable).fixture.system;
    const auto hs = integer_horizon(s, 20);
    EXPECT_TRUE(es_certificate(s, 0.25, hs).holds()) << seed;   // inside: every rate <= -0.5
    EXPECT_FALSE(es_certificate(s, 2.5, hs).holds()) << seed;   // outside: no rate reaches -2.5

    GeneratorSpec split = stable;
    split.blocks = {{1, -2, -1, BlockRole::stable}, {1, 1, 2, BlockRole::unstable}};
    const auto g = random_block_cocycle(split);
    const auto hg = integer_horizon(g.fixture.system, 20);
    EXPECT_TRUE(dichotomy_certificate(g.fixture.system, *g.fixture.family, -0.75, 0.75, hg).holds()) << seed;
    EXPECT_FALSE(dichotomy_certificate(g.fixture.system, *g.fixture.family, -2.5, 0.75, hg).holds()) << seed;
    EXPECT_FALSE(dichotomy_certificate(g.fixture.system, *g.fixture.family, -0.75, 2.5, hg).holds()) << seed;
  }
}

}  // namespace
}  // namespace skewflow
