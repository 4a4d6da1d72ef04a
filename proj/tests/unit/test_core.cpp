#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "skewflow/axioms.hpp"
#include "skewflow/builtins.hpp"
#include "skewflow/errors.hpp"
#include "skewflow/linear_operator.hpp"
#include "skewflow/norms.hpp"
#include "skewflow/random.hpp"
#include "skewflow/system.hpp"
#include "support.hpp"

namespace skewflow {
namespace {

using testing::scalar;

TEST(Norms, OperatorNormsMatchDefinitions) {
  Eigen::MatrixXd a(2, 2);
  a << 1, -2, 3, 4;
  EXPECT_DOUBLE_EQ(operator_norm(a, NormKind::l1), 6.0);
  EXPECT_DOUBLE_EQ(operator_norm(a, NormKind::linf), 7.0);
  // sigma_max of [[1,-2],[3,4]]: eigenvalues of A^T A = [[10,10],[10,20]] are 15 +- sqrt(125)
  EXPECT_NEAR(operator_norm(a, NormKind::l2), std::sqrt(15.0 + std::sqrt(125.0)), 1e-12);
  EXPECT_DOUBLE_EQ(operator_norm(Eigen::MatrixXd::Identity(3, 3), NormKind::l1), 1.0);
}

TEST(Norms, DualPairing) {
  EXPECT_EQ(dual(NormKind::l1), NormKind::linf);
  EXPECT_EQ(dual(NormKind::linf), NormKind::l1);
  EXPECT_EQ(dual(NormKind::l2), NormKind::l2);
  Rng rng(5);
  for (NormKind k : {NormKind::l1, NormKind::l2, NormKind::linf}) {
    bool equality_seen = false;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::MatrixXd a(3, 3);
      Eigen::VectorXd v(3);
      Eigen::VectorXd w(3);
      for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = rng.uniform(-1, 1);
      for (int i = 0; i < 3; ++i) v(i) = rng.uniform(-1, 1);
      for (int i = 0; i < 3; ++i) w(i) = rng.uniform(-1, 1);
      const Eigen::VectorXd av = a * v;
      EXPECT_LE(std::abs(av.dot(w)), vector_norm(av, k) * vector_norm(w, dual(k)) * (1 + 1e-12));
      const Eigen::VectorXd f = norming_functional(av, k);
      EXPECT_NEAR(vector_norm(f, dual(k)), 1.0, 1e-12);
      if (std::abs(av.dot(f) - vector_norm(av, k)) <= 1e-12 * vector_norm(av, k)) equality_seen = true;
    }
    EXPECT_TRUE(equality_seen) << to_string(k);
  }
}

TEST(Norms, ParseAndNormalize) {
  EXPECT_EQ(parse_norm_kind("l2"), NormKind::l2);
  EXPECT_THROW(parse_norm_kind("l3"), InputError);
  EXPECT_THROW(normalized(Eigen::VectorXd::Zero(2), NormKind::l1), InputError);
  Eigen::VectorXd v(2);
  v << 3, -4;
  EXPECT_DOUBLE_EQ(vector_norm(normalized(v, NormKind::l2), NormKind::l2), 1.0);
}

TEST(Adjoint, Examples) {
  const auto s = adjoint_apply(LinearOperator(scalar(std::exp(-3.0)), NormKind::l1), Eigen::VectorXd::Ones(1));
  EXPECT_DOUBLE_EQ(s.value(0), std::exp(-3.0));
  EXPECT_DOUBLE_EQ(s.dual_norm, std::exp(-3.0));

  Eigen::VectorXd w(3);
  w << 0.5, -2, 7;
  const auto id = adjoint_apply(LinearOperator::identity(3, NormKind::l2), w);
  EXPECT_EQ(id.value, w);

  Eigen::MatrixXd n(2, 2);
  n << 0, 1, 0, 0;
  Eigen::VectorXd e1(2);
  e1 << 1, 0;
  const auto t = adjoint_apply(LinearOperator(n, NormKind::l1), e1);
  EXPECT_EQ(t.value(0), 0.0);
  EXPECT_EQ(t.value(1), 1.0);
  EXPECT_EQ(t.dual_norm, 1.0);

  EXPECT_THROW(adjoint_apply(LinearOperator(n, NormKind::l1), Eigen::VectorXd::Ones(3)), InputError);
}

TEST(Evaluate, ExNues1AtIntegers) {
  const auto sys = builtin("ex_nues1").system;
  // f(k) = e^{2k} at the integers, so Phi(2, 0) = f(0)/f(2) e^{-2} = e^{-6}
  for (double x : {0.0, 1.5, 9.0}) {
    EXPECT_NEAR(sys.evaluate(2, 0, {x}).matrix()(0, 0), std::exp(-6.0), 1e-15);
  }
  EXPECT_NEAR(sys.evaluate(2, 0, {0}).matrix()(0, 0), 0.00247875, 1e-8);
}

TEST(Evaluate, ExNuedAtOne) {
  const auto m = builtin("ex_nued").system.evaluate(1, 0, {0}).matrix();
  EXPECT_NEAR(m(0, 0), std::exp(std::sin(1.0) - 2.0), 1e-15);
  EXPECT_NEAR(m(1, 1), std::exp(2.0 - 3.0 * std::cos(1.0)), 1e-15);
  // the quoted six-digit values are rounded loosely
  EXPECT_NEAR(m(0, 0), 0.313940, 2e-5);
  EXPECT_NEAR(m(1, 1), 1.460970, 2e-5);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(1, 0), 0.0);
}

TEST(Evaluate, IdentityAtEqualTimes) {
  for (const auto& name : builtin_names()) {
    const auto sys = builtin(name).system;
    for (double t : {0.0, 1.0, 2.5, 7.0}) {
      if (sys.domain() == TimeDomain::integer && !is_integer_time(t)) continue;
      const auto m = sys.evaluate(t, t, {0.5}).matrix();
      EXPECT_EQ(m, Eigen::MatrixXd::Identity(sys.dim(), sys.dim())) << name << " t=" << t;
    }
  }
}

TEST(Evaluate, DomainAndStateErrors) {
  const auto sys = builtin("ex_nued").system;
  EXPECT_THROW(sys.evaluate(1, 2, {0}), DomainError);
  EXPECT_THROW(sys.evaluate(-1, -2, {0}), DomainError);
  EXPECT_THROW(sys.evaluate(2, 1, {-1}), InputError);
  EXPECT_THROW(sys.evaluate(2, 1, {std::numeric_limits<double>::quiet_NaN()}), InputError);
  const auto steps = from_steps("s", {scalar(0.5)});
  EXPECT_THROW(steps.evaluate(1.5, 0, {0}), DomainError);
  EXPECT_THROW(steps.evaluate(2, 0, {0}), DomainError);
}

TEST(FromSteps, ProductOfFactors) {
  const auto sys = from_steps("half", {scalar(0.5), scalar(0.5)});
  EXPECT_DOUBLE_EQ(sys.evaluate(2, 0, {0}).matrix()(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(sys.evaluate(2, 1, {0}).matrix()(0, 0), 0.5);
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 1, 2, 0, 1;
  b << 0, 1, 1, 0;
  const auto mixed = from_steps("ab", {a, b}, NormKind::l1, true);
  EXPECT_EQ(mixed.evaluate(2, 0, {0}).matrix(), b * a);
  EXPECT_EQ(mixed.evaluate(4, 1, {0}).matrix(), b * a * b);
  EXPECT_EQ(mixed.flow(4, 1, {2}).value, 5.0);
}

TEST(Axioms, ExNues1Telescopes) {
  const auto sys = builtin("ex_nues1").system;
  const std::vector<TimeTriple> grid{{2, 1, 0}, {3, 2, 1}};
  const std::vector<StatePoint> states{{0}, {1}};
  const auto r = verify_axioms(sys, grid, states);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_cocycle_residual, 1e-12);
  EXPECT_EQ(r.rows.size(), 4u);
}

TEST(Axioms, DegenerateTriplesAreExact) {
  for (const auto& name : builtin_names()) {
    const auto sys = builtin(name).system;
    const std::vector<TimeTriple> grid{{0, 0, 0}, {3, 3, 3}};
    const std::vector<StatePoint> states{{0}, {2}};
    const auto r = verify_axioms(sys, grid, states);
    EXPECT_EQ(r.max_cocycle_residual, 0.0) << name;
    EXPECT_EQ(r.max_semiflow_residual, 0.0) << name;
    EXPECT_EQ(r.max_identity_residual, 0.0) << name;
  }
}

TEST(Axioms, ExCeVariants) {
  const auto grid = random_triples(50, 6.0, 3, false);
  const std::vector<StatePoint> states{{0}, {0.7}, {2}};
  BuiltinParams corrected;
  EXPECT_TRUE(verify_axioms(builtin("ex_ce", corrected).system, grid, states).passed);
  BuiltinParams literal;
  literal.variant = "literal";
  const auto r = verify_axioms(builtin("ex_ce", literal).system, grid, states);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_cocycle_residual, 1e-3);
}

TEST(Axioms, RandomTriplesAreOrderedAndSeeded) {
  const auto a = random_triples(40, 10.0, 9, false);
  const auto b = random_triples(40, 10.0, 9, false);
  ASSERT_EQ(a.size(), 40u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(a[i].t0, a[i].s);
    EXPECT_LE(a[i].s, a[i].t);
    EXPECT_LE(a[i].t, 10.0);
    EXPECT_EQ(a[i].t, b[i].t);
  }
  for (const auto& t : random_triples(20, 10.0, 9, true)) EXPECT_TRUE(is_integer_time(t.s));
  const std::vector<StatePoint> states{{0}};
  EXPECT_THROW(verify_axioms(testing::identity_system(), std::vector<TimeTriple>{}, states), InputError);
  EXPECT_THROW(verify_axioms(testing::identity_system(), std::vector<TimeTriple>{{1, 2, 0}}, states), InputError);
}

TEST(Shift, Examples) {
  const auto nues = builtin("ex_nues1").system;
  const auto nueis = builtin("ex_nueis1").system;
  EXPECT_EQ(shift(nues, 0.0).evaluate(3.5, 1.25, {0}).matrix(), nues.evaluate(3.5, 1.25, {0}).matrix());
  for (int m = 0; m <= 6; ++m) {
    for (int n = 0; n <= m; ++n) {
      EXPECT_NEAR(shift(nueis, 1.0).evaluate(m, n, {0}).matrix()(0, 0), 1.0, 1e-12);
      EXPECT_NEAR(shift(nues, -3.0).evaluate(m, n, {0}).matrix()(0, 0), 1.0, 1e-12);
    }
  }
}

TEST(Shift, GroupLaw) {
  const auto sys = builtin("ex_nued").system;
  const auto twice = shift(shift(sys, 0.3), 1.1);
  const auto once = shift(sys, 0.3 + 1.1);
  EXPECT_EQ(twice.shift_rate(), once.shift_rate());
  EXPECT_EQ(twice.evaluate(4.5, 1, {0}).matrix(), once.evaluate(4.5, 1, {0}).matrix());
  const auto back = shift(shift(sys, 0.75), -0.75);
  EXPECT_EQ(back.evaluate(4.5, 1, {0}).matrix(), sys.evaluate(4.5, 1, {0}).matrix());
}

TEST(Restrict, Examples) {
  const auto sys = builtin("ex_nued").system;
  const auto grid = integer_pairs(6);
  const std::vector<StatePoint> states{{0}, {1}};
  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(2, 2);
  p1(0, 0) = 1;
  const auto c1 = restrict_to(sys, constant_projector(p1), grid, states);
  const double t = 2.5, s = 0.75;
  const auto m = c1.evaluate(t, s, {0}).matrix();
  EXPECT_NEAR(m(0, 0), std::exp(t * std::sin(t) - s * std::sin(s) - 2 * t + 2 * s), 1e-14);
  EXPECT_EQ(m(1, 1), 0.0);

  const auto same = restrict_to(sys, constant_projector(Eigen::MatrixXd::Identity(2, 2)), grid, states);
  EXPECT_EQ(same.evaluate(t, s, {0}).matrix(), sys.evaluate(t, s, {0}).matrix());
  const auto zero = restrict_to(sys, constant_projector(Eigen::MatrixXd::Zero(2, 2)), grid, states);
  EXPECT_EQ(zero.evaluate(t, s, {0}).norm(), 0.0);

  Eigen::MatrixXd bad(2, 2);
  bad << 1, 1, 0, 0;
  EXPECT_THROW(restrict_to(sys, constant_projector(bad), grid, states), InputError);
}

TEST(Invariance, Residuals) {
  const auto sys = builtin("ex_nued").system;
  const auto grid = integer_pairs(5);
  const std::vector<StatePoint> states{{0}};
  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(2, 2);
  p1(0, 0) = 1;
  EXPECT_EQ(invariance_residual(sys, constant_projector(p1), grid, states).max_residual, 0.0);
  EXPECT_EQ(invariance_residual(sys, constant_projector(Eigen::MatrixXd::Identity(2, 2)), grid, states).max_residual,
            0.0);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 1, 0, 0;
  const auto r = invariance_residual(sys, constant_projector(bad), grid, states);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_residual, 0.1);
}

}  // namespace
}  // namespace skewflow
