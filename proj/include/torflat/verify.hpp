#ifndef TORFLAT_VERIFY_HPP
#define TORFLAT_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "super.hpp"
#include "toric.hpp"
#include "unfolding.hpp"

namespace torflat {

struct CheckResult {
  std::string name;
  std::string scope; // truncation the check was carried out to
  bool passed = true;
  std::string failure; // first failing identity, empty on pass
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto &c : checks)
      if (!c.passed)
        return false;
    return true;
  }

  const CheckResult *find(const std::string &name) const {
    for (const auto &c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }

  VerificationReport &operator+=(const VerificationReport &o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    return *this;
  }
};

namespace detail {

inline std::string scope_text(std::int64_t order) {
  if (order < 0)
    return "vacuous (order too small)";
  return "t-degree <= " + std::to_string(order);
}

inline std::int64_t t_weight(const TMonomial &e, const std::vector<std::int64_t> &wts) {
  std::int64_t w = 0;
  for (std::size_t a = 0; a < e.size(); ++a)
    w += static_cast<std::int64_t>(e[a]) * wts[a];
  return w;
}

// Records the first nonzero coefficient of a residual series.
inline void note_residual(CheckResult &res, const TruncatedSeries<Poly> &r,
                          const std::string &where, const UnfoldingState &s) {
  if (!res.passed || r.is_zero())
    return;
  const auto &[e, v] = *r.begin();
  res.passed = false;
  res.failure = where + " at " + render_t_monomial(e) + " (t-weight " +
                std::to_string(t_weight(e, s.t_weights())) + "): residual " + s.ring().render(v);
}

inline void note_residual(CheckResult &res, const TruncatedSeries<Rational> &r,
                          const std::string &where, const std::vector<std::int64_t> &wts) {
  if (!res.passed || r.is_zero())
    return;
  const auto &[e, v] = *r.begin();
  res.passed = false;
  res.failure = where + " at " + render_t_monomial(e) + " (t-weight " +
                std::to_string(t_weight(e, wts)) + "): residual " + to_string(v);
}

inline Poly times_rational(const Rational &c, const Poly &p) { return p * c; }
inline Poly times_poly(const Poly &a, const Poly &b) { return a * b; }

// Q_g(lambda) restricted to its even part.
inline Poly q_even(const Poly &g, const SuperElement &l) { return q_f(l, g).even_part(); }

inline Poly euler_weight(const Poly &f, const CayleyRing &ring) {
  Poly r(ring.nvars());
  for (std::size_t a = 0; a < ring.nvars(); ++a) {
    std::int64_t w = ring.degree_of(a).weight;
    if (w == 0)
      continue;
    r += f.derivative(a).times(Monomial::variable(ring.nvars(), a), Rational(w));
  }
  return r;
}

} // namespace detail

/// d_a Gamma * d_b Gamma = sum_rho A_ab^rho d_rho Gamma + Q_{S+Gamma}(Lambda_ab)
/// and d_b d_a Gamma = Delta(Lambda_ab), to t-degree N-2.
inline VerificationReport check_fqm2(const UnfoldingState &s) {
  const std::int64_t ord = static_cast<std::int64_t>(s.order()) - 2;
  CheckResult first{"fqm2.product", detail::scope_text(ord), true, {}};
  CheckResult second{"fqm2.laplacian", detail::scope_text(ord), true, {}};
  if (ord >= 0) {
    const auto gamma = gamma_series(s);
    std::vector<TruncatedSeries<Poly>> dg;
    for (std::size_t a = 0; a < s.dim(); ++a)
      dg.push_back(gamma.derivative(a));
    TruncatedSeries<Poly> S_series(s.dim(), static_cast<std::int64_t>(s.order()));
    S_series.add_term(TMonomial(s.dim(), 0), s.ring().potential());
    const auto full = S_series + gamma;

    for (std::size_t a = 0; a < s.dim(); ++a)
      for (std::size_t b = a; b < s.dim(); ++b) {
        const auto A = structure_series(s, a, b);
        const auto L = lambda_series(s, a, b);
        auto r = series_product<Poly>(dg[a], dg[b], detail::times_poly).truncated(ord);
        for (std::size_t rho = 0; rho < s.dim(); ++rho)
          r -= series_product<Poly>(A[rho], dg[rho], detail::times_rational);
        r -= series_product<Poly>(full, L, detail::q_even);
        const std::string pair = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        detail::note_residual(first, r.truncated(ord), "pair " + pair, s);

        auto r2 = dg[a].derivative(b).truncated(ord);
        r2 -= L.map<Poly>([](const SuperElement &l) { return delta(l).even_part(); });
        detail::note_residual(second, r2, "pair " + pair, s);
      }
  }
  return {{first, second}};
}

/// A_{alpha beta}^rho for every ordered pair, stored independently so that a
/// single entry can be perturbed.
struct StructureSeries {
  std::size_t dim = 0;
  std::int64_t order = 0;
  std::size_t unit = 0;
  std::vector<std::int64_t> t_weights;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<TruncatedSeries<Rational>>> A;

  const TruncatedSeries<Rational> &at(std::size_t a, std::size_t b, std::size_t rho) const {
    return A.at({a, b}).at(rho);
  }
  TruncatedSeries<Rational> &at(std::size_t a, std::size_t b, std::size_t rho) {
    return A.at({a, b}).at(rho);
  }
};

inline StructureSeries structure_series_all(const UnfoldingState &s) {
  StructureSeries out;
  out.dim = s.dim();
  out.order = static_cast<std::int64_t>(s.order()) - 2;
  out.t_weights = s.t_weights();
  auto e = s.basis().unit_index();
  if (!e)
    throw std::logic_error("basis has no unit element");
  out.unit = *e;
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b)
      out.A.emplace(std::make_pair(a, b), structure_series(s, a, b));
  return out;
}

/// Commutativity, unit, potentiality and associativity of A.
inline VerificationReport check_flat_f_axioms(const StructureSeries &A) {
  const std::int64_t ord = A.order;
  CheckResult comm{"axioms.commutativity", detail::scope_text(ord), true, {}};
  CheckResult unit{"axioms.unit", detail::scope_text(ord), true, {}};
  CheckResult pot{"axioms.potentiality", detail::scope_text(ord - 1), true, {}};
  CheckResult assoc{"axioms.associativity", detail::scope_text(ord), true, {}};
  if (ord < 0)
    return {{comm, unit, pot, assoc}};
  const std::size_t n = A.dim;
  const auto &w = A.t_weights;
  auto idx = [](std::size_t a, std::size_t b, std::size_t c) {
    return std::to_string(a) + "," + std::to_string(b) + " -> " + std::to_string(c);
  };
  auto mul = [](const Rational &x, const Rational &y) { return Rational(x * y); };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t r = 0; r < n; ++r) {
        detail::note_residual(comm, A.at(a, b, r) - A.at(b, a, r), "A_" + idx(a, b, r), w);
        auto d = A.at(A.unit, b, r);
        if (b == r)
          d.add_term(TMonomial(n, 0), Rational(-1));
        detail::note_residual(unit, d, "A_" + idx(A.unit, b, r), w);
      }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t sg = 0; sg < n; ++sg) {
          if (ord >= 1) {
            auto r = A.at(a, b, sg).derivative(c) - A.at(c, b, sg).derivative(a);
            detail::note_residual(pot, r,
                                  "d_" + std::to_string(c) + " A_" + idx(a, b, sg), w);
          }
          TruncatedSeries<Rational> r(n, ord);
          for (std::size_t rho = 0; rho < n; ++rho) {
            r += series_product<Rational>(A.at(a, b, rho), A.at(rho, c, sg), mul);
            r -= series_product<Rational>(A.at(b, c, rho), A.at(rho, a, sg), mul);
          }
          detail::note_residual(assoc, r,
                                "(" + std::to_string(a) + std::to_string(b) + ")" +
                                    std::to_string(c) + " -> " + std::to_string(sg),
                                w);
        }
  return {{comm, unit, pot, assoc}};
}

inline VerificationReport check_flat_f_axioms(const UnfoldingState &s) {
  return check_flat_f_axioms(structure_series_all(s));
}

/// Every u_m has degree (c_B, 1 - sum wt(t)); every lambda_m has degree
/// (c_B, 2 - sum wt(t)).
inline VerificationReport check_weight_homogeneity(const UnfoldingState &s) {
  CheckResult u_res{"weights.u", "all stored entries", true, {}};
  CheckResult l_res{"weights.lambda", "all stored entries", true, {}};
  const auto &R = s.ring();
  for (const auto &[m, u] : s.u_table()) {
    if (!u_res.passed)
      break;
    MultiDegree want{s.basis().charge, s.expected_u_weight(m)};
    for (const auto &[mono, c] : u)
      if (R.degree(mono) != want) {
        u_res.passed = false;
        u_res.failure = "u" + render(m) + " term " + render_monomial(mono, R.names()) +
                        " has degree " + render_degree(R.degree(mono)) + ", expected " +
                        render_degree(want);
        break;
      }
  }
  for (const auto &[m, l] : s.lambda_table()) {
    if (!l_res.passed)
      break;
    MultiDegree want{s.basis().charge, s.expected_u_weight(m) + 1};
    for (const auto &[key, c] : l)
      if (term_degree(R, key) != want) {
        l_res.passed = false;
        l_res.failure = "lambda" + render(m) + " has a term of degree " +
                        render_degree(term_degree(R, key)) + ", expected " + render_degree(want);
        break;
      }
  }
  return {{u_res, l_res}};
}

/// kappa = sum_a wt(q_a) q_a eta_a
inline SuperElement euler_kappa(const CayleyRing &ring) {
  SuperElement k(ring.nvars());
  for (std::size_t a = 0; a < ring.nvars(); ++a) {
    std::int64_t w = ring.degree_of(a).weight;
    if (w != 0)
      k.add_term(Monomial::variable(ring.nvars(), a), OddSet::single(a), Rational(w));
  }
  return k;
}

/// Per power of hbar, for every alpha, to t-degree N-1:
///   E(S+Gamma) Gamma_a = Q_{S+Gamma}(Gamma_a kappa)
///   E(Gamma_a) = Delta(Gamma_a kappa) - k Gamma_a
/// with E the weight Euler field.
inline VerificationReport check_euler_identity(const UnfoldingState &s,
                                               std::optional<SuperElement> kappa = std::nullopt) {
  const std::int64_t ord = static_cast<std::int64_t>(s.order()) - 1;
  CheckResult h0{"euler.hbar0", detail::scope_text(ord), true, {}};
  CheckResult h1{"euler.hbar1", detail::scope_text(ord), true, {}};
  const auto &R = s.ring();
  const SuperElement K = kappa ? *kappa : euler_kappa(R);
  const auto gamma = gamma_series(s);
  TruncatedSeries<Poly> full(s.dim(), static_cast<std::int64_t>(s.order()));
  full.add_term(TMonomial(s.dim(), 0), R.potential());
  full += gamma;
  const auto E_full = full.map<Poly>([&R](const Poly &p) { return detail::euler_weight(p, R); });
  const Rational k(static_cast<long>(R.k()));

  for (std::size_t a = 0; a < s.dim(); ++a) {
    const auto ga = gamma.derivative(a);
    const auto ga_kappa =
        ga.map<SuperElement>([&K](const Poly &p) { return p * K; });
    auto r0 = series_product<Poly>(E_full, ga, detail::times_poly);
    r0 -= series_product<Poly>(full, ga_kappa, detail::q_even);
    detail::note_residual(h0, r0.truncated(ord), "alpha " + std::to_string(a), s);

    auto r1 = ga.map<Poly>([&R](const Poly &p) { return detail::euler_weight(p, R); });
    r1 -= ga_kappa.map<Poly>([](const SuperElement &e) { return delta(e).even_part(); });
    r1 += ga.map<Poly>([&k](const Poly &p) { return p * k; });
    detail::note_residual(h1, r1.truncated(ord), "alpha " + std::to_string(a), s);
  }
  return {{h0, h1}};
}

enum class CheckSet { all, fqm2, axioms, weights, euler };

inline VerificationReport run_checks(const UnfoldingState &s, CheckSet which) {
  VerificationReport r;
  if (which == CheckSet::all || which == CheckSet::fqm2)
    r += check_fqm2(s);
  if (which == CheckSet::all || which == CheckSet::axioms)
    r += check_flat_f_axioms(s);
  if (which == CheckSet::all || which == CheckSet::weights)
    r += check_weight_homogeneity(s);
  if (which == CheckSet::all || which == CheckSet::euler)
    r += check_euler_identity(s);
  return r;
}

} // namespace torflat

#endif // TORFLAT_VERIFY_HPP
