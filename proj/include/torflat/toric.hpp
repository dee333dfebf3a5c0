#ifndef TORFLAT_TORIC_HPP
#define TORFLAT_TORIC_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "intlattice.hpp"
#include "poly.hpp"

namespace torflat {

using ChargeVector = std::vector<std::int64_t>;

inline std::string render_charge(const ChargeVector &c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i)
      s += ", ";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

/// (deg_c, deg_w): class-group charge and Cayley weight.
struct MultiDegree {
  ChargeVector charge;
  std::int64_t weight = 0;

  MultiDegree &operator+=(const MultiDegree &o) {
    if (charge.size() != o.charge.size())
      throw std::invalid_argument("adding degrees of different charge rank");
    for (std::size_t i = 0; i < charge.size(); ++i)
      charge[i] += o.charge[i];
    weight += o.weight;
    return *this;
  }
  MultiDegree &operator-=(const MultiDegree &o) {
    if (charge.size() != o.charge.size())
      throw std::invalid_argument("subtracting degrees of different charge rank");
    for (std::size_t i = 0; i < charge.size(); ++i)
      charge[i] -= o.charge[i];
    weight -= o.weight;
    return *this;
  }
  friend MultiDegree operator+(MultiDegree a, const MultiDegree &b) { return a += b; }
  friend MultiDegree operator-(MultiDegree a, const MultiDegree &b) { return a -= b; }
  friend bool operator==(const MultiDegree &, const MultiDegree &) = default;
  friend auto operator<=>(const MultiDegree &a, const MultiDegree &b) {
    if (auto c = a.charge <=> b.charge; c != 0)
      return c;
    return a.weight <=> b.weight;
  }
};

inline std::string render_degree(const MultiDegree &d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.charge.size(); ++i) {
    if (i)
      s += ", ";
    s += std::to_string(d.charge[i]);
  }
  return s + "; " + std::to_string(d.weight) + ")";
}

/// Cl(P_Sigma)-grading of the Cox ring, read off from the rays.
struct ClassGrading {
  std::size_t num_rays = 0;
  std::size_t ambient_dim = 0;
  std::size_t charge_rank = 0;
  std::vector<IntVector> rays;
  IntMatrix ray_matrix;           // num_rays x ambient_dim
  IntMatrix projection;           // charge_rank x num_rays
  IntMatrix section;              // num_rays x charge_rank, projection * section = 1
  std::vector<ChargeVector> charge_of_x;
};

inline ClassGrading build_class_grading(const std::vector<IntVector> &rays) {
  if (rays.empty())
    throw RaysDoNotSpan("no rays given");
  const std::size_t n = rays.front().size();
  if (n == 0)
    throw RaysDoNotSpan("rays have dimension 0");
  ClassGrading g;
  g.rays = rays;
  g.ray_matrix = IntMatrix::from_rows(rays);
  g.num_rays = rays.size();
  g.ambient_dim = n;
  if (g.num_rays < n || smith_normal_form(g.ray_matrix).rank() < n)
    throw RaysDoNotSpan("rays do not span R^" + std::to_string(n));
  g.projection = free_cokernel_projection(g.ray_matrix);
  g.charge_rank = g.projection.rows();
  g.section = g.charge_rank ? integer_right_inverse(g.projection)
                            : IntMatrix(g.num_rays, 0);
  for (std::size_t rho = 0; rho < g.num_rays; ++rho) {
    ChargeVector c(g.charge_rank);
    for (std::size_t j = 0; j < g.charge_rank; ++j)
      c[j] = to_int64(g.projection(j, rho));
    g.charge_of_x.push_back(std::move(c));
  }
  return g;
}

namespace detail {

struct PieceCache {
  std::shared_mutex mutex;
  std::map<MultiDegree, std::shared_ptr<const std::vector<Monomial>>> pieces;
};

} // namespace detail

/// A = Q[y_1..y_k, x_1..x_r] graded by Cl(P_Sigma) (+) Z, with the potential
/// S = sum y_i G_i. Immutable once built; copies share the piece cache.
class CayleyRing {
public:
  CayleyRing() = default;

  const ClassGrading &grading() const noexcept { return grading_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t r() const noexcept { return grading_.num_rays; }
  std::size_t n() const noexcept { return grading_.ambient_dim; }
  std::size_t nvars() const noexcept { return k_ + grading_.num_rays; }
  std::size_t charge_rank() const noexcept { return grading_.charge_rank; }

  bool is_y(std::size_t i) const noexcept { return i < k_; }

  const std::vector<MultiDegree> &degree_of_q() const noexcept { return degree_of_q_; }
  const MultiDegree &degree_of(std::size_t i) const { return degree_of_q_.at(i); }
  const std::vector<Poly> &hypersurfaces() const noexcept { return G_; }
  const std::vector<ChargeVector> &betas() const noexcept { return betas_; }
  const Poly &potential() const noexcept { return S_; }
  const Poly &partial(std::size_t i) const { return dS_.at(i); }
  const ChargeVector &background_charge() const noexcept { return c_B_; }
  const VariableNames &names() const noexcept { return names_; }

  MultiDegree zero_degree() const { return {ChargeVector(charge_rank(), 0), 0}; }

  MultiDegree degree(const Monomial &m) const {
    MultiDegree d = zero_degree();
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0)
        continue;
      const auto &q = degree_of_q_[i];
      for (std::size_t j = 0; j < d.charge.size(); ++j)
        d.charge[j] += static_cast<std::int64_t>(m.exps[i]) * q.charge[j];
      d.weight += static_cast<std::int64_t>(m.exps[i]) * q.weight;
    }
    return d;
  }

  std::int64_t weight(const Monomial &m) const {
    std::int64_t w = 0;
    for (std::size_t i = 0; i < k_; ++i)
      w += m.exps[i];
    return w;
  }

  /// Per-variable weights (1 on y's, 0 on x's).
  std::vector<std::int64_t> weight_functional() const {
    std::vector<std::int64_t> w(nvars(), 0);
    for (std::size_t i = 0; i < k_; ++i)
      w[i] = 1;
    return w;
  }
  /// Per-variable j-th charge component.
  std::vector<std::int64_t> charge_functional(std::size_t j) const {
    std::vector<std::int64_t> c(nvars());
    for (std::size_t i = 0; i < nvars(); ++i)
      c[i] = degree_of_q_[i].charge.at(j);
    return c;
  }

  std::string render(const Poly &p) const { return torflat::render(p, names_); }

  /// Monomials of multidegree d in GrevlexFirst order. Cached; safe for
  /// concurrent callers.
  std::shared_ptr<const std::vector<Monomial>> graded_piece(const MultiDegree &d) const;

  friend CayleyRing build_cayley_ring(const ClassGrading &grading,
                                      const std::vector<Poly> &G_list);

private:
  ClassGrading grading_;
  std::size_t k_ = 0;
  std::vector<MultiDegree> degree_of_q_;
  std::vector<Poly> G_;
  std::vector<ChargeVector> betas_;
  Poly S_;
  std::vector<Poly> dS_;
  ChargeVector c_B_;
  VariableNames names_;
  std::shared_ptr<detail::PieceCache> cache_ = std::make_shared<detail::PieceCache>();
};

/// Builds the Cayley ring from hypersurfaces given over the x-variables only
/// (each G_i has exactly r variables).
inline CayleyRing build_cayley_ring(const ClassGrading &grading,
                                    const std::vector<Poly> &G_list) {
  CayleyRing R;
  R.grading_ = grading;
  R.k_ = G_list.size();
  const std::size_t r = grading.num_rays, k = R.k_;
  if (k == 0)
    throw std::invalid_argument("at least one hypersurface is required");
  R.names_ = VariableNames::cayley(k, r);

  std::vector<MultiDegree> x_deg;
  for (std::size_t rho = 0; rho < r; ++rho)
    x_deg.push_back({grading.charge_of_x[rho], 0});

  for (std::size_t i = 0; i < k; ++i) {
    const Poly &g = G_list[i];
    if (g.is_zero())
      throw std::invalid_argument("hypersurface " + std::to_string(i + 1) + " is zero");
    if (g.nvars() != r)
      throw std::invalid_argument("hypersurface " + std::to_string(i + 1) +
                                  " must be given over the " + std::to_string(r) +
                                  " x-variables");
    std::optional<ChargeVector> beta;
    Poly lifted(r + k);
    for (const auto &[m, c] : g) {
      ChargeVector ch(grading.charge_rank, 0);
      for (std::size_t rho = 0; rho < r; ++rho)
        for (std::size_t j = 0; j < ch.size(); ++j)
          ch[j] += static_cast<std::int64_t>(m.exps[rho]) * grading.charge_of_x[rho][j];
      if (!beta)
        beta = ch;
      else if (*beta != ch)
        throw InhomogeneousHypersurface(i, render_charge(*beta), render_charge(ch));
      Monomial big(r + k);
      for (std::size_t rho = 0; rho < r; ++rho)
        big.exps[k + rho] = m.exps[rho];
      lifted.add_term(big, c);
    }
    R.betas_.push_back(*beta);
    R.G_.push_back(std::move(lifted));
  }

  for (std::size_t i = 0; i < k; ++i) {
    ChargeVector minus(grading.charge_rank);
    for (std::size_t j = 0; j < minus.size(); ++j)
      minus[j] = -R.betas_[i][j];
    R.degree_of_q_.push_back({minus, 1});
  }
  for (const auto &d : x_deg)
    R.degree_of_q_.push_back(d);

  R.S_ = Poly(r + k);
  for (std::size_t i = 0; i < k; ++i)
    R.S_ += R.G_[i].times(Monomial::variable(r + k, i));
  for (std::size_t i = 0; i < r + k; ++i)
    R.dS_.push_back(R.S_.derivative(i));

  R.c_B_.assign(grading.charge_rank, 0);
  for (const auto &d : R.degree_of_q_)
    for (std::size_t j = 0; j < R.c_B_.size(); ++j)
      R.c_B_[j] -= d.charge[j];

  const MultiDegree unit{ChargeVector(grading.charge_rank, 0), 1};
  for (const auto &[m, c] : R.S_)
    if (R.degree(m) != unit)
      throw std::logic_error("potential is not homogeneous of degree (0,1)");
  return R;
}

inline bool is_calabi_yau(const CayleyRing &ring) {
  for (auto c : ring.background_charge())
    if (c != 0)
      return false;
  return true;
}

namespace detail {

// all compositions of total into parts nonnegative pieces, lexicographically descending
inline void compositions(std::size_t parts, std::int64_t total,
                         std::vector<std::uint32_t> &cur,
                         std::vector<std::vector<std::uint32_t>> &out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(static_cast<std::uint32_t>(total));
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::int64_t v = total; v >= 0; --v) {
    cur.push_back(static_cast<std::uint32_t>(v));
    compositions(parts, total - v, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Monomial> compute_piece(const CayleyRing &ring, const MultiDegree &d) {
  std::vector<Monomial> out;
  if (d.weight < 0)
    return out;
  const auto &g = ring.grading();
  const std::size_t k = ring.k(), r = ring.r();
  std::vector<std::vector<std::uint32_t>> ys;
  std::vector<std::uint32_t> cur;
  compositions(k, d.weight, cur, ys);
  for (const auto &v : ys) {
    // x-part must carry charge d.charge + sum v_i beta_i
    IntVector target(g.charge_rank);
    for (std::size_t j = 0; j < g.charge_rank; ++j) {
      std::int64_t t = d.charge[j];
      for (std::size_t i = 0; i < k; ++i)
        t += static_cast<std::int64_t>(v[i]) * ring.betas()[i][j];
      target[j] = t;
    }
    IntVector u0 = g.section * target;
    LatticePolytope P;
    P.dimension = g.ambient_dim;
    for (std::size_t rho = 0; rho < r; ++rho)
      P.inequalities.push_back({g.rays[rho], -u0[rho]});
    for (const auto &m : enumerate_lattice_points(P)) {
      Monomial mono(k + r);
      for (std::size_t i = 0; i < k; ++i)
        mono.exps[i] = v[i];
      for (std::size_t rho = 0; rho < r; ++rho) {
        Integer e = u0[rho];
        for (std::size_t j = 0; j < g.ambient_dim; ++j)
          e += g.rays[rho][j] * m[j];
        mono.exps[k + rho] = static_cast<std::uint32_t>(to_int64(e));
      }
      out.push_back(std::move(mono));
    }
  }
  std::sort(out.begin(), out.end(), GrevlexFirst{});
  return out;
}

} // namespace detail

inline std::shared_ptr<const std::vector<Monomial>>
CayleyRing::graded_piece(const MultiDegree &d) const {
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->pieces.find(d);
    if (it != cache_->pieces.end())
      return it->second;
  }
  auto piece = std::make_shared<const std::vector<Monomial>>(detail::compute_piece(*this, d));
  std::unique_lock lock(cache_->mutex);
  return cache_->pieces.try_emplace(d, std::move(piece)).first->second;
}

/// Monomials x^u y^v of multidegree d, in canonical order.
inline std::vector<Monomial> enumerate_graded_piece(const CayleyRing &ring,
                                                   const MultiDegree &d) {
  if (d.weight < 0)
    throw std::invalid_argument("graded piece requested at negative weight");
  return *ring.graded_piece(d);
}

inline std::map<MultiDegree, Poly> homogeneous_components(const Poly &f,
                                                          const CayleyRing &ring) {
  return homogeneous_components<MultiDegree>(
      f, [&ring](const Monomial &m) { return ring.degree(m); });
}

} // namespace torflat

#endif // TORFLAT_TORIC_HPP
