// Shared fixtures and independent oracles for the test suites.
#ifndef TORFLAT_TESTS_SUPPORT_HPP
#define TORFLAT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <torflat/torflat.hpp>

namespace fixtures {

using torflat::Poly;

inline Poly x_poly(std::size_t r, const std::vector<std::pair<long, std::vector<std::uint32_t>>> &terms) {
  Poly p(r);
  for (const auto &[c, e] : terms)
    p.add_term(torflat::Monomial(e), torflat::Rational(c));
  return p;
}

inline torflat::ClassGrading p2() { return torflat::build_class_grading({{1, 0}, {0, 1}, {-1, -1}}); }

inline torflat::ClassGrading p4() {
  return torflat::build_class_grading(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}});
}

inline torflat::ClassGrading p1xp1() {
  return torflat::build_class_grading({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

inline torflat::CayleyRing cubic() {
  return torflat::build_cayley_ring(p2(), {x_poly(3, {{1, {3, 0, 0}}, {1, {0, 3, 0}}, {1, {0, 0, 3}}})});
}

inline torflat::CayleyRing quadric() {
  return torflat::build_cayley_ring(p2(), {x_poly(3, {{1, {2, 0, 0}}, {1, {0, 2, 0}}, {1, {0, 0, 2}}})});
}

inline torflat::CayleyRing quintic() {
  std::vector<std::pair<long, std::vector<std::uint32_t>>> t;
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<std::uint32_t> e(5, 0);
    e[i] = 5;
    t.push_back({1, e});
  }
  return torflat::build_cayley_ring(p4(), {x_poly(5, t)});
}

// x1^2 x3^2 + x1^2 x4^2 + x2^2 x4^2 + 2 x2^2 x3^2
inline torflat::CayleyRing curve22() {
  return torflat::build_cayley_ring(
      p1xp1(), {x_poly(4, {{1, {2, 0, 2, 0}}, {1, {2, 0, 0, 2}}, {1, {0, 2, 0, 2}}, {2, {0, 2, 2, 0}}})});
}

// Non-CY ring on P(1,1,2); charges come out as (1,2,1).
inline torflat::CayleyRing p112_quartic() {
  auto g = torflat::build_class_grading({{1, 0}, {0, 1}, {-1, -2}});
  return torflat::build_cayley_ring(g, {x_poly(3, {{1, {4, 0, 0}}, {1, {0, 2, 0}}, {1, {0, 0, 4}}})});
}

inline std::string read_text(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- random elements -------------------------------------------------------

inline torflat::Rational random_rational(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  torflat::Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline torflat::Monomial random_monomial(std::mt19937_64 &rng, std::size_t nvars, unsigned max_exp = 2) {
  std::uniform_int_distribution<unsigned> e(0, max_exp);
  torflat::Monomial m(nvars);
  for (auto &x : m.exps)
    x = e(rng);
  return m;
}

inline torflat::OddSet random_odd(std::mt19937_64 &rng, std::size_t nvars) {
  std::bernoulli_distribution b(0.35);
  torflat::OddSet s;
  for (std::size_t i = 0; i < nvars; ++i)
    if (b(rng))
      s = s.with(i);
  return s;
}

inline Poly random_poly(std::mt19937_64 &rng, std::size_t nvars, int terms = 4) {
  Poly p(nvars);
  for (int i = 0; i < terms; ++i)
    p.add_term(random_monomial(rng, nvars), random_rational(rng));
  return p;
}

template <typename Element>
Element random_graded(std::mt19937_64 &rng, std::size_t nvars, int terms = 4) {
  Element e(nvars);
  for (int i = 0; i < terms; ++i)
    e.add_term(random_monomial(rng, nvars), random_odd(rng, nvars), random_rational(rng));
  return e;
}

// Random element homogeneous in every grading: all terms share one odd set and
// monomials from one graded piece.
inline torflat::FormElement random_homogeneous_form(std::mt19937_64 &rng, const torflat::CayleyRing &R,
                                                    std::int64_t weight) {
  torflat::OddSet odd = random_odd(rng, R.nvars());
  torflat::MultiDegree d{torflat::ChargeVector(R.charge_rank(), 0), weight};
  for (std::size_t i : odd.indices())
    d -= R.degree_of(i);
  torflat::FormElement w(R.nvars());
  if (d.weight < 0)
    return w;
  auto piece = torflat::enumerate_graded_piece(R, d);
  if (piece.empty())
    return w;
  std::uniform_int_distribution<std::size_t> pick(0, piece.size() - 1);
  for (int i = 0; i < 3; ++i)
    w.add_term(piece[pick(rng)], odd, random_rational(rng));
  return w;
}

// ---- dense Jacobian oracle -------------------------------------------------
//
// Independent of the library's enumeration and echelon code: monomials are
// found by scanning an exponent box and filtering on hand-supplied charges,
// the Jacobian ideal piece is spanned densely, and its rank comes from plain
// Gaussian elimination over mpq_class.

struct DenseRing {
  std::size_t k = 0, r = 0;
  std::vector<std::vector<long>> charge; // per variable y1..yk, x1..xr
  std::vector<long> weight;              // per variable
  std::map<std::vector<unsigned>, mpq_class> S;
};

inline DenseRing dense_ring(const std::vector<std::vector<long>> &x_charges,
                            const std::vector<std::vector<long>> &betas,
                            const std::vector<std::map<std::vector<unsigned>, long>> &G) {
  DenseRing D;
  D.k = betas.size();
  D.r = x_charges.size();
  for (const auto &b : betas) {
    std::vector<long> c;
    for (long v : b)
      c.push_back(-v);
    D.charge.push_back(c);
    D.weight.push_back(1);
  }
  for (const auto &c : x_charges) {
    D.charge.push_back(c);
    D.weight.push_back(0);
  }
  for (std::size_t i = 0; i < D.k; ++i)
    for (const auto &[e, c] : G[i]) {
      std::vector<unsigned> full(D.k + D.r, 0);
      full[i] = 1;
      for (std::size_t j = 0; j < D.r; ++j)
        full[D.k + j] = e[j];
      D.S[full] += c;
    }
  return D;
}

inline std::vector<std::vector<unsigned>> dense_piece(const DenseRing &D, const std::vector<long> &charge,
                                                      long weight, unsigned box) {
  std::vector<std::vector<unsigned>> out;
  const std::size_t n = D.k + D.r;
  if (weight < 0)
    return out;
  std::vector<unsigned> e(n, 0);
  for (;;) {
    long w = 0;
    std::vector<long> c(charge.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      w += static_cast<long>(e[i]) * D.weight[i];
      for (std::size_t j = 0; j < c.size(); ++j)
        c[j] += static_cast<long>(e[i]) * D.charge[i][j];
    }
    if (w == weight && c == charge)
      out.push_back(e);
    std::size_t i = 0;
    while (i < n && e[i] == box)
      e[i++] = 0;
    if (i == n)
      break;
    ++e[i];
  }
  return out;
}

inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> M) {
  std::size_t rank = 0;
  if (M.empty())
    return 0;
  const std::size_t cols = M[0].size();
  for (std::size_t c = 0; c < cols && rank < M.size(); ++c) {
    std::size_t p = rank;
    while (p < M.size() && M[p][c] == 0)
      ++p;
    if (p == M.size())
      continue;
    std::swap(M[p], M[rank]);
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == rank || M[i][c] == 0)
        continue;
      mpq_class f = M[i][c] / M[rank][c];
      for (std::size_t j = c; j < cols; ++j)
        M[i][j] -= f * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// dim of (A / Jac S) at (charge, weight), scanning exponents in [0, box].
inline std::size_t dense_quotient_dim(const DenseRing &D, const std::vector<long> &charge, long weight,
                                      unsigned box) {
  const std::size_t n = D.k + D.r;
  auto cols = dense_piece(D, charge, weight, box);
  std::map<std::vector<unsigned>, std::size_t> col_of;
  for (std::size_t i = 0; i < cols.size(); ++i)
    col_of[cols[i]] = i;
  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t v = 0; v < n; ++v) {
    std::map<std::vector<unsigned>, mpq_class> dS;
    for (const auto &[e, c] : D.S)
      if (e[v] > 0) {
        auto d = e;
        --d[v];
        dS[d] += c * e[v];
      }
    if (dS.empty())
      continue;
    // degree of dS/dq_v = (0,1) - deg q_v
    std::vector<long> mc(charge);
    for (std::size_t j = 0; j < mc.size(); ++j)
      mc[j] += D.charge[v][j];
    long mw = weight - 1 + D.weight[v];
    for (const auto &m : dense_piece(D, mc, mw, box)) {
      std::vector<mpq_class> row(cols.size(), 0);
      for (const auto &[e, c] : dS) {
        auto prod = e;
        for (std::size_t i = 0; i < n; ++i)
          prod[i] += m[i];
        auto it = col_of.find(prod);
        if (it == col_of.end())
          throw std::logic_error("oracle box too small");
        row[it->second] += c;
      }
      rows.push_back(std::move(row));
    }
  }
  return cols.size() - dense_rank(std::move(rows));
}

inline DenseRing dense_cubic() {
  return dense_ring({{1}, {1}, {1}}, {{3}}, {{{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}}});
}

inline DenseRing dense_quintic() {
  std::map<std::vector<unsigned>, long> g;
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<unsigned> e(5, 0);
    e[i] = 5;
    g[e] = 1;
  }
  return dense_ring({{1}, {1}, {1}, {1}, {1}}, {{5}}, {g});
}

inline DenseRing dense_curve22() {
  return dense_ring({{1, 0}, {1, 0}, {0, 1}, {0, 1}}, {{2, 2}},
                    {{{{2, 0, 2, 0}, 1}, {{2, 0, 0, 2}, 1}, {{0, 2, 0, 2}, 1}, {{0, 2, 2, 0}, 2}}});
}

} // namespace fixtures

// Readable gtest failure messages.
namespace torflat {

inline void PrintTo(const Poly &p, std::ostream *os) {
  *os << render(p, VariableNames::cayley(0, p.nvars()));
}

template <typename Tag>
void PrintTo(const detail::GradedElement<Tag> &e, std::ostream *os) {
  *os << detail::render_graded(e, VariableNames::cayley(0, e.nvars()), "e");
}

} // namespace torflat

#endif // TORFLAT_TESTS_SUPPORT_HPP
