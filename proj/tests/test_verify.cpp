#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace torflat;

namespace {

const UnfoldingState &cubic_n4() {
  static const UnfoldingState s = [] {
    auto R = fixtures::cubic();
    return run_unfolding(R, jacobian_basis(R), 4);
  }();
  return s;
}

const UnfoldingState &curve22_n3() {
  static const UnfoldingState s = [] {
    auto R = fixtures::curve22();
    return run_unfolding(R, jacobian_basis(R), 3);
  }();
  return s;
}

bool check_passes(const VerificationReport &r, const std::string &name) {
  const auto *c = r.find(name);
  return c && c->passed;
}

TruncatedSeries<Rational> constant_series(std::size_t dim, std::int64_t order, const Rational &v) {
  TruncatedSeries<Rational> s(dim, order);
  s.add_term(TMonomial(dim, 0), v);
  return s;
}

} // namespace

TEST(FQM2, CubicOrderFourPasses) {
  auto r = check_fqm2(cubic_n4());
  EXPECT_TRUE(r.passed()) << (r.checks[0].failure + r.checks[1].failure);
  EXPECT_EQ(r.find("fqm2.product")->scope, "t-degree <= 2");
  EXPECT_EQ(r.find("fqm2.laplacian")->scope, "t-degree <= 2");
}

TEST(FQM2, CorruptedLambdaFailsWithLocation) {
  UnfoldingState s = cubic_n4();
  auto &L = s.mutable_lambda_table();
  const MultiIndex m{1, 1};
  L.at(m) += SuperElement::term(Monomial({1, 1, 1, 1}), OddSet::single(1), 1);
  auto r = check_fqm2(s);
  const auto *p = r.find("fqm2.product");
  ASSERT_NE(p, nullptr);
  EXPECT_FALSE(p->passed);
  EXPECT_NE(p->failure.find("pair (1,1)"), std::string::npos) << p->failure;
}

TEST(FQM2, OrderTooSmallIsVacuous) {
  auto R = fixtures::cubic();
  auto s = run_unfolding(R, jacobian_basis(R), 1);
  auto r = check_fqm2(s);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks[0].scope, "vacuous (order too small)");
}

TEST(Axioms, PassForBothRuns) {
  for (const auto *s : {&cubic_n4(), &curve22_n3()}) {
    auto r = check_flat_f_axioms(*s);
    for (const auto &c : r.checks)
      EXPECT_TRUE(c.passed) << c.name << ": " << c.failure;
  }
}

TEST(Axioms, SingleEntryCorruptionsAreCaught) {
  for (const auto *s : {&cubic_n4(), &curve22_n3()}) {
    const auto base = structure_series_all(*s);
    const std::size_t n = base.dim, e = base.unit;
    const std::size_t other = e == 0 ? 1 : 0;
    {
      auto A = base; // one ordered pair only
      A.at(e, other, other) += constant_series(n, A.order, 1);
      EXPECT_FALSE(check_passes(check_flat_f_axioms(A), "axioms.commutativity"));
    }
    {
      auto A = base;
      A.at(e, other, other) += constant_series(n, A.order, 1);
      A.at(other, e, other) += constant_series(n, A.order, 1);
      auto r = check_flat_f_axioms(A);
      EXPECT_TRUE(check_passes(r, "axioms.commutativity"));
      EXPECT_FALSE(check_passes(r, "axioms.unit"));
    }
    {
      auto A = base; // a t^e-linear term; d_e A_oo no longer matches d_o A_eo
      TruncatedSeries<Rational> bump(n, A.order);
      TMonomial t(n, 0);
      t[e] = 1;
      bump.add_term(t, 1);
      A.at(other, other, e) += bump;
      EXPECT_FALSE(check_passes(check_flat_f_axioms(A), "axioms.potentiality"));
    }
    {
      // symmetric change to A_{e o}^e: commutativity survives, the unit and
      // associativity ((e o) o = e (o o)) do not
      auto A = base;
      A.at(e, other, e) += constant_series(n, A.order, 1);
      A.at(other, e, e) += constant_series(n, A.order, 1);
      auto r = check_flat_f_axioms(A);
      EXPECT_TRUE(check_passes(r, "axioms.commutativity"));
      EXPECT_FALSE(check_passes(r, "axioms.unit"));
      EXPECT_FALSE(check_passes(r, "axioms.associativity"));
    }
  }
}

TEST(Weights, HoldForBothRuns) {
  for (const auto *s : {&cubic_n4(), &curve22_n3()}) {
    auto r = check_weight_homogeneity(*s);
    EXPECT_TRUE(r.passed()) << r.checks[0].failure << r.checks[1].failure;
  }
}

TEST(Weights, WrongWeightCaught) {
  UnfoldingState s = cubic_n4();
  s.mutable_u_table().at(MultiIndex{1, 1}) += Poly::constant(4, 1);
  auto r = check_weight_homogeneity(s);
  EXPECT_FALSE(check_passes(r, "weights.u"));
  EXPECT_NE(r.find("weights.u")->failure.find("u(1,1)"), std::string::npos);
}

TEST(Weights, QuinticSpectrum) {
  auto R = fixtures::quintic();
  auto engine = std::make_shared<const JacobianEngine>(R);
  UnfoldingState s(engine, jacobian_basis(*engine), 1);
  std::set<std::int64_t> w(s.t_weights().begin(), s.t_weights().end());
  EXPECT_EQ(w, (std::set<std::int64_t>{1, 0, -1, -2}));
}

TEST(Euler, CubicOrderThreePasses) {
  auto R = fixtures::cubic();
  auto s = run_unfolding(R, jacobian_basis(R), 3);
  auto r = check_euler_identity(s);
  EXPECT_TRUE(r.passed()) << r.checks[0].failure << r.checks[1].failure;
  EXPECT_EQ(r.checks[0].scope, "t-degree <= 2");
}

TEST(Euler, IncompleteFieldCaught) {
  auto R = fixtures::cubic();
  auto s = run_unfolding(R, jacobian_basis(R), 3);
  // kappa with its only term dropped
  auto r = check_euler_identity(s, SuperElement(R.nvars()));
  EXPECT_FALSE(r.passed());
}

TEST(CrossChecks, ProductIdentityImpliesOriginSymmetryAndUnit) {
  const auto &s = cubic_n4();
  ASSERT_TRUE(check_fqm2(s).passed());
  TMonomial origin(s.dim(), 0);
  auto A = structure_series_all(s);
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b)
      for (std::size_t r = 0; r < s.dim(); ++r) {
        const Rational *x = A.at(a, b, r).find(origin), *y = A.at(b, a, r).find(origin);
        EXPECT_EQ(x ? *x : Rational(0), y ? *y : Rational(0));
        const Rational *u = A.at(A.unit, b, r).find(origin);
        EXPECT_EQ(u ? *u : Rational(0), Rational(b == r ? 1 : 0));
      }
}

TEST(RunChecks, SelectsSubsets) {
  const auto &s = cubic_n4();
  EXPECT_EQ(run_checks(s, CheckSet::weights).checks.size(), 2u);
  EXPECT_EQ(run_checks(s, CheckSet::axioms).checks.size(), 4u);
  auto all = run_checks(s, CheckSet::all);
  EXPECT_EQ(all.checks.size(), 10u);
  EXPECT_TRUE(all.passed());
}
