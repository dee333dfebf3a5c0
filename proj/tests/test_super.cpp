#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace torflat;

namespace {

std::vector<CayleyRing> rings() {
  return {fixtures::cubic(), fixtures::curve22(), fixtures::p112_quartic()};
}

Monomial mono(std::vector<std::uint32_t> e) { return Monomial(std::move(e)); }

OddSet odd(std::initializer_list<std::size_t> idx) {
  OddSet s;
  for (auto i : idx)
    s = s.with(i);
  return s;
}

// weight of a homogeneous form, dq_i carrying wt(q_i)
std::int64_t form_weight(const FormElement &w, const CayleyRing &R) {
  return form_term_degree(R, w.begin()->first).weight;
}

FormElement times(const Poly &p, const FormElement &w) { return p * w; }

Poly random_homogeneous_poly(std::mt19937_64 &rng, const CayleyRing &R, std::int64_t weight) {
  auto piece = enumerate_graded_piece(R, {ChargeVector(R.charge_rank(), 0), weight});
  Poly f(R.nvars());
  std::uniform_int_distribution<std::size_t> pick(0, piece.size() - 1);
  for (int i = 0; i < 3; ++i)
    f.add_term(piece[pick(rng)], fixtures::random_rational(rng));
  return f;
}

} // namespace

TEST(SuperMultiply, Anticommutation) {
  const std::size_t n = 4;
  auto e1 = eta(n, 1), e2 = eta(n, 2);
  EXPECT_EQ(super_multiply(e1, e2), SuperElement::term(Monomial(n), odd({1, 2})));
  EXPECT_EQ(super_multiply(e2, e1), SuperElement::term(Monomial(n), odd({1, 2}), -1));
  EXPECT_TRUE(super_multiply(e1, e1).is_zero());
}

TEST(SuperMultiply, OneTransposition) {
  auto a = SuperElement::term(mono({0, 1, 0, 0}), odd({2}));
  auto b = SuperElement::term(mono({0, 0, 1, 0}), odd({1}));
  EXPECT_EQ(super_multiply(a, b), SuperElement::term(mono({0, 1, 1, 0}), odd({1, 2}), -1));
}

TEST(SuperMultiply, AssociativeAndGradedCommutative) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    auto a = fixtures::random_graded<SuperElement>(rng, 4), b = fixtures::random_graded<SuperElement>(rng, 4),
         c = fixtures::random_graded<SuperElement>(rng, 4);
    EXPECT_EQ(super_multiply(super_multiply(a, b), c), super_multiply(a, super_multiply(b, c)));
    auto x = SuperElement::term(fixtures::random_monomial(rng, 4), fixtures::random_odd(rng, 4));
    auto y = SuperElement::term(fixtures::random_monomial(rng, 4), fixtures::random_odd(rng, 4));
    auto sx = x.begin()->first.odd.size(), sy = y.begin()->first.odd.size();
    auto yx = super_multiply(y, x);
    if ((sx * sy) % 2)
      yx *= Rational(-1);
    EXPECT_EQ(super_multiply(x, y), yx);
  }
}

TEST(Delta, Examples) {
  const std::size_t n = 4;
  EXPECT_EQ(delta(SuperElement::term(mono({0, 1, 0, 0}), odd({1}))),
            SuperElement::from_poly(Poly::constant(n, 1)));
  EXPECT_TRUE(delta(SuperElement::term(Monomial(n), odd({1, 2}))).is_zero());
  // d/dq1 d/deta1 gives +q2 eta2; d/dq2 d/deta2 passes eta1, giving -q1 eta1
  auto r = delta(SuperElement::term(mono({0, 1, 1, 0}), odd({1, 2})));
  SuperElement want(n);
  want.add_term(mono({0, 0, 1, 0}), odd({2}), 1);
  want.add_term(mono({0, 1, 0, 0}), odd({1}), -1);
  EXPECT_EQ(r, want);
  EXPECT_TRUE(delta(r).is_zero());
}

TEST(QS, CubicExamples) {
  auto R = fixtures::cubic();
  const auto &N = R.names();
  EXPECT_EQ(render(q_s(eta(4, 0), R), N), "x1^3 + x2^3 + x3^3");
  EXPECT_EQ(render(q_s(eta(4, 1), R), N), "3*y1*x1^2");
  std::mt19937_64 rng(3);
  auto f = SuperElement::from_poly(fixtures::random_poly(rng, 4));
  EXPECT_TRUE(q_s(f, R).is_zero());
}

TEST(QS, PreservesChargeAndWeight) {
  std::mt19937_64 rng(4);
  for (const auto &R : rings()) {
    for (int i = 0; i < 20; ++i) {
      auto w = fixtures::random_homogeneous_form(rng, R, 2);
      if (w.is_zero())
        continue;
      auto e = mu_inverse(w);
      auto d0 = term_degree(R, e.begin()->first);
      for (const auto &[k, c] : q_s(e, R))
        EXPECT_EQ(term_degree(R, k), d0);
      for (const auto &[k, c] : delta(e)) {
        auto d = term_degree(R, k);
        EXPECT_EQ(d.charge, d0.charge);
        EXPECT_EQ(d.weight, d0.weight - 1);
      }
    }
  }
}

TEST(OperatorIdentities, SquareZeroAndAnticommute) {
  std::mt19937_64 rng(5);
  for (const auto &R : rings()) {
    const std::size_t n = R.nvars();
    for (int i = 0; i < 25; ++i) {
      auto e = fixtures::random_graded<SuperElement>(rng, n, 5);
      EXPECT_TRUE(delta(delta(e)).is_zero());
      EXPECT_TRUE(q_s(q_s(e, R), R).is_zero());
      EXPECT_TRUE((delta(q_s(e, R)) + q_s(delta(e), R)).is_zero());
      EXPECT_TRUE(k_s(k_s(e, R), R).is_zero());
      auto w = fixtures::random_graded<FormElement>(rng, n, 5);
      EXPECT_TRUE(form_d(form_d(w)).is_zero());
      EXPECT_TRUE(wedge_ds(wedge_ds(w, R), R).is_zero());
      EXPECT_TRUE(twisted_d(twisted_d(w, R), R).is_zero());
    }
  }
}

TEST(Ell2, Examples) {
  auto R = fixtures::cubic();
  auto q1 = SuperElement::term(mono({0, 1, 0, 0}), {});
  auto q2 = SuperElement::term(mono({0, 0, 1, 0}), {});
  EXPECT_TRUE(ell2_ks(q1, q2, R).is_zero());
  EXPECT_EQ(ell2_ks(q1, eta(4, 1), R), SuperElement::from_poly(Poly::constant(4, 1)));
}

TEST(Ell2, QSContributesNothing) {
  std::mt19937_64 rng(6);
  for (const auto &R : rings())
    for (int i = 0; i < 20; ++i) {
      auto a = SuperElement::term(fixtures::random_monomial(rng, R.nvars()), fixtures::random_odd(rng, R.nvars()),
                                  fixtures::random_rational(rng));
      auto b = fixtures::random_graded<SuperElement>(rng, R.nvars());
      EXPECT_EQ(ell2_ks(a, b, R), ell2_delta(a, b));
    }
}

TEST(Ell2, InhomogeneousFirstArgumentRejected) {
  auto R = fixtures::cubic();
  auto a = eta(4, 1) + SuperElement::from_poly(Poly::constant(4, 1));
  EXPECT_THROW(ell2_ks(a, eta(4, 2), R), InhomogeneousCohDegree);
}

TEST(Mu, Examples) {
  const std::size_t n = 4;
  EXPECT_EQ(mu(SuperElement::from_poly(Poly::constant(n, 1))),
            FormElement::term(Monomial(n), odd({0, 1, 2, 3})));
  // 1-based sign (-1)^(1+2+3+4+4) = +1
  EXPECT_EQ(mu(SuperElement::term(Monomial(n), odd({0, 1, 2, 3}))),
            FormElement::term(Monomial(n), {}, 1));
  // 1-based sign (-1)^(2+1) = -1
  EXPECT_EQ(mu(eta(n, 1)), FormElement::term(Monomial(n), odd({0, 2, 3}), -1));
}

TEST(Mu, IntertwinesOperatorsAndRoundTrips) {
  std::mt19937_64 rng(7);
  for (const auto &R : rings())
    for (int i = 0; i < 20; ++i) {
      auto e = fixtures::random_graded<SuperElement>(rng, R.nvars(), 5);
      EXPECT_EQ(mu(delta(e)), form_d(mu(e)));
      EXPECT_EQ(mu(q_s(e, R)), wedge_ds(mu(e), R));
      EXPECT_EQ(mu(k_s(e, R)), twisted_d(mu(e), R));
      EXPECT_EQ(mu_inverse(mu(e)), e);
      auto w = fixtures::random_graded<FormElement>(rng, R.nvars(), 5);
      EXPECT_EQ(mu(mu_inverse(w)), w);
    }
}

TEST(FormD, Examples) {
  const std::size_t n = 4;
  auto w = FormElement::term(mono({0, 1, 0, 0}), odd({2}));
  EXPECT_EQ(form_d(w), FormElement::term(Monomial(n), odd({1, 2})));
  EXPECT_TRUE(form_d(dq(n, 1)).is_zero());
  auto R = fixtures::cubic();
  auto one = FormElement::from_poly(Poly::constant(4, 1));
  EXPECT_EQ(twisted_d(one, R), wedge_df(one, R.potential()));
}

TEST(EulerContraction, WeightContractionOfDS) {
  auto R = fixtures::cubic();
  auto one = FormElement::from_poly(Poly::constant(4, 1));
  auto dS = wedge_ds(one, R);
  EXPECT_EQ(contract_euler(dS, R.weight_functional()), FormElement::from_poly(R.potential()));
  for (std::size_t i = 1; i < 4; ++i)
    EXPECT_TRUE(contract_euler(dq(4, i), R.weight_functional()).is_zero());
}

TEST(EulerContraction, SquareZeroAnticommuteAndDerivation) {
  std::mt19937_64 rng(8);
  for (const auto &R : rings()) {
    std::vector<std::vector<std::int64_t>> phis = {R.weight_functional()};
    for (std::size_t j = 0; j < R.charge_rank(); ++j)
      phis.push_back(R.charge_functional(j));
    for (int i = 0; i < 10; ++i) {
      auto a = fixtures::random_graded<FormElement>(rng, R.nvars());
      auto b = fixtures::random_graded<FormElement>(rng, R.nvars());
      for (const auto &p : phis) {
        EXPECT_TRUE(contract_euler(contract_euler(a, p), p).is_zero());
        for (const auto &p2 : phis)
          EXPECT_TRUE((contract_euler(contract_euler(a, p), p2) + contract_euler(contract_euler(a, p2), p)).is_zero());
        // odd derivation, checked on a homogeneous-degree left factor
        auto x = FormElement::term(fixtures::random_monomial(rng, R.nvars()), fixtures::random_odd(rng, R.nvars()));
        auto lhs = contract_euler(form_wedge(x, b), p);
        auto rhs = form_wedge(contract_euler(x, p), b);
        auto t = form_wedge(x, contract_euler(b, p));
        if (x.begin()->first.odd.size() % 2)
          rhs -= t;
        else
          rhs += t;
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(EulerContraction, HomotopyIdentity) {
  std::mt19937_64 rng(9);
  for (const auto &R : rings()) {
    const auto wt = R.weight_functional();
    for (int i = 0; i < 20; ++i) {
      auto xi = fixtures::random_homogeneous_form(rng, R, 1 + i % 3);
      auto f = random_homogeneous_poly(rng, R, i % 3);
      if (xi.is_zero())
        continue;
      Rational lambda = fixtures::random_rational(rng);
      auto D = [&](const FormElement &w) { return d_lambda_f(w, lambda, f); };
      auto lhs = D(contract_euler(xi, wt)) + contract_euler(D(xi), wt);
      std::int64_t fw = f.is_zero() ? 0 : R.weight(f.begin()->first);
      auto rhs = xi * Rational(lambda * form_weight(xi, R)) + times(f * Rational(fw), xi);
      EXPECT_EQ(lhs, rhs);
      // charge Euler fields: f need not have charge 0, so use its charge
      for (std::size_t j = 0; j < R.charge_rank(); ++j) {
        const auto ch = R.charge_functional(j);
        auto lhs_c = D(contract_euler(xi, ch)) + contract_euler(D(xi), ch);
        std::int64_t fc = f.is_zero() ? 0 : R.degree(f.begin()->first).charge[j];
        auto rhs_c = xi * Rational(lambda * form_term_degree(R, xi.begin()->first).charge[j]) + times(f * Rational(fc), xi);
        EXPECT_EQ(lhs_c, rhs_c);
      }
    }
  }
}

TEST(Epsilon, ClosedFormAndTelescoping) {
  std::mt19937_64 rng(10);
  for (const auto &R : rings()) {
    EXPECT_TRUE(epsilon_w_s(FormElement(R.nvars()), R).is_zero());
    for (int i = 0; i < 20; ++i) {
      auto xi = fixtures::random_homogeneous_form(rng, R, i % 3);
      if (xi.is_zero())
        continue;
      std::int64_t w = form_weight(xi, R);
      auto closed = xi * Rational(w) + times(R.potential(), xi);
      EXPECT_EQ(epsilon_w_s(xi, R), closed);
      EXPECT_FALSE(closed.is_zero());
      FormElement prev = xi; // S^(i-1) xi
      for (int k = 1; k <= 3; ++k) {
        auto cur = times(R.potential(), prev);
        EXPECT_EQ(cur + prev * Rational(w + k - 1), epsilon_w_s(prev, R));
        prev = cur;
      }
    }
  }
}

TEST(SuperRender, Canonical) {
  auto R = fixtures::cubic();
  SuperElement e(4);
  e.add_term(mono({1, 2, 0, 0}), odd({1, 2}), 3);
  EXPECT_EQ(render(e, R.names()), "3*y1*x1^2*eta_x1*eta_x2");
  EXPECT_EQ(render(FormElement::term(mono({0, 1, 0, 0}), odd({2, 3})), R.names()), "x1*dx2*dx3");
  EXPECT_EQ(parse_super(render(e, R.names()), R.names()), e);
}
