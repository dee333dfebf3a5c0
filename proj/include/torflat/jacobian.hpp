#ifndef TORFLAT_JACOBIAN_HPP
#define TORFLAT_JACOBIAN_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "super.hpp"
#include "toric.hpp"

namespace torflat {

/// Sorted (index, value) pairs without zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

namespace detail {

// y += s * x
inline void axpy(SparseVector &y, const Rational &s, const SparseVector &x) {
  if (s == 0 || x.empty())
    return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.emplace_back(x[j].first, s * x[j].second);
      ++j;
    } else {
      Rational v = y[i].second + s * x[j].second;
      if (v != 0)
        out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

} // namespace detail

/// Row echelon form over Q built incrementally. Every stored row remembers
/// which combination of the inserted vectors produced it, so reductions come
/// with explicit witnesses. Pivot = smallest column index of a row.
class SparseEchelon {
public:
  /// Inserts v, known as unknown `id`. Returns true if v was independent of
  /// everything inserted so far.
  bool insert(SparseVector v, std::uint32_t id) {
    SparseVector rep{{id, Rational(1)}};
    for (;;) {
      if (v.empty())
        return false;
      auto it = pivot_.find(v.front().first);
      if (it == pivot_.end())
        break;
      const Row &row = rows_[it->second];
      Rational f = -v.front().second / row.vec.front().second;
      detail::axpy(v, f, row.vec);
      detail::axpy(rep, f, row.rep);
    }
    pivot_.emplace(v.front().first, rows_.size());
    rows_.push_back({std::move(v), std::move(rep)});
    return true;
  }

  struct Reduction {
    SparseVector remainder;
    SparseVector combination; // over inserted ids: v - remainder = sum c_id * vec_id
  };

  Reduction reduce(const SparseVector &v) const {
    std::map<std::uint32_t, Rational> work(v.begin(), v.end());
    Reduction out;
    while (!work.empty()) {
      auto head = work.begin();
      auto it = pivot_.find(head->first);
      if (it == pivot_.end()) {
        out.remainder.emplace_back(head->first, head->second);
        work.erase(head);
        continue;
      }
      const Row &row = rows_[it->second];
      Rational f = head->second / row.vec.front().second;
      for (const auto &[c, x] : row.vec) {
        auto [w, inserted] = work.try_emplace(c, 0);
        w->second -= f * x;
        if (w->second == 0)
          work.erase(w);
      }
      detail::axpy(out.combination, f, row.rep);
    }
    return out;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  bool is_pivot(std::uint32_t col) const { return pivot_.count(col) != 0; }

private:
  struct Row {
    SparseVector vec;
    SparseVector rep;
  };
  std::map<std::uint32_t, std::size_t> pivot_;
  std::vector<Row> rows_;
};

/// Generator m * dS/dq_i of a graded piece of the Jacobian ideal.
struct IdealGenerator {
  Monomial multiplier;
  std::size_t partial;
};

/// Jac(S) restricted to one multidegree, echelonized over the monomial basis
/// of the ambient piece.
struct GradedIdealPiece {
  MultiDegree degree;
  std::shared_ptr<const std::vector<Monomial>> columns;
  std::map<Monomial, std::uint32_t, GrevlexFirst> column_index;
  std::vector<IdealGenerator> generators; // x-partials first, y-partials last
  std::vector<SparseVector> generator_vectors;
  SparseEchelon echelon;

  std::size_t rank() const { return echelon.rank(); }
  std::size_t quotient_dimension() const { return columns->size() - rank(); }

  /// Non-pivot columns: canonical representatives of the quotient.
  std::vector<Monomial> standard_monomials() const {
    std::vector<Monomial> out;
    for (std::uint32_t c = 0; c < columns->size(); ++c)
      if (!echelon.is_pivot(c))
        out.push_back((*columns)[c]);
    return out;
  }

  SparseVector to_vector(const Poly &f) const {
    SparseVector v;
    for (const auto &[m, c] : f) {
      auto it = column_index.find(m);
      if (it == column_index.end())
        throw std::logic_error("polynomial term outside graded piece " + render_degree(degree));
      v.emplace_back(it->second, c);
    }
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return v;
  }
};

/// Degree of dS/dq_i, i.e. (0,1) - deg q_i.
inline MultiDegree partial_degree(const CayleyRing &ring, std::size_t i) {
  MultiDegree d{ChargeVector(ring.charge_rank(), 0), 1};
  return d - ring.degree_of(i);
}

inline GradedIdealPiece build_ideal_piece(const CayleyRing &ring, const MultiDegree &d) {
  if (d.weight < 0)
    throw std::invalid_argument("ideal piece requested at negative weight");
  GradedIdealPiece piece;
  piece.degree = d;
  piece.columns = ring.graded_piece(d);
  for (std::uint32_t c = 0; c < piece.columns->size(); ++c)
    piece.column_index.emplace((*piece.columns)[c], c);

  std::vector<std::size_t> order;
  for (std::size_t i = ring.k(); i < ring.nvars(); ++i)
    order.push_back(i);
  for (std::size_t i = 0; i < ring.k(); ++i)
    order.push_back(i);
  for (std::size_t i : order) {
    if (ring.partial(i).is_zero())
      continue;
    MultiDegree md = d - partial_degree(ring, i);
    if (md.weight < 0)
      continue;
    for (const auto &m : *ring.graded_piece(md)) {
      piece.generators.push_back({m, i});
      piece.generator_vectors.push_back(piece.to_vector(ring.partial(i).times(m)));
    }
  }
  for (std::uint32_t g = 0; g < piece.generator_vectors.size(); ++g)
    piece.echelon.insert(piece.generator_vectors[g], g);
  return piece;
}

/// Charge-c_B Jacobian quotient basis: standard monomials per weight, u = 1 first.
struct JacobianBasis {
  ChargeVector charge;
  std::vector<Poly> elements;
  std::vector<Monomial> monomials;
  std::vector<std::int64_t> weights;
  std::vector<std::vector<std::size_t>> by_weight; // index partition I_0, I_1, ...

  std::size_t size() const noexcept { return elements.size(); }

  std::vector<std::size_t> dims_by_weight() const {
    std::vector<std::size_t> d;
    for (const auto &v : by_weight)
      d.push_back(v.size());
    return d;
  }

  std::optional<std::size_t> unit_index() const {
    for (std::size_t a = 0; a < monomials.size(); ++a)
      if (monomials[a].is_one())
        return a;
    return std::nullopt;
  }
};

/// Shared cache of echelonized ideal pieces for one ring.
class JacobianEngine {
public:
  explicit JacobianEngine(CayleyRing ring) : ring_(std::move(ring)) {}

  const CayleyRing &ring() const noexcept { return ring_; }

  std::shared_ptr<const GradedIdealPiece> ideal_piece(const MultiDegree &d) const {
    {
      std::shared_lock lock(mutex_);
      auto it = pieces_.find(d);
      if (it != pieces_.end())
        return it->second;
    }
    auto p = std::make_shared<const GradedIdealPiece>(build_ideal_piece(ring_, d));
    std::unique_lock lock(mutex_);
    return pieces_.try_emplace(d, std::move(p)).first->second;
  }

  std::size_t quotient_dimension(const ChargeVector &charge, std::int64_t weight) const {
    return ideal_piece({charge, weight})->quotient_dimension();
  }

private:
  CayleyRing ring_;
  mutable std::shared_mutex mutex_;
  mutable std::map<MultiDegree, std::shared_ptr<const GradedIdealPiece>> pieces_;
};

inline GradedIdealPiece ideal_piece(const CayleyRing &ring, const MultiDegree &d) {
  return build_ideal_piece(ring, d);
}

struct BasisOptions {
  bool allow_non_cy = false;
  std::optional<std::int64_t> max_weight; // defaults to n - k
  bool check_vanishing = true;            // quotient must vanish at max_weight + 1
};

inline JacobianBasis jacobian_basis(const JacobianEngine &engine, const BasisOptions &opt = {}) {
  const CayleyRing &ring = engine.ring();
  if (!is_calabi_yau(ring) && !opt.allow_non_cy)
    throw NotCalabiYau("background charge " + render_charge(ring.background_charge()) +
                       " is nonzero");
  const std::int64_t top =
      opt.max_weight ? *opt.max_weight
                     : static_cast<std::int64_t>(ring.n()) - static_cast<std::int64_t>(ring.k());
  JacobianBasis B;
  B.charge = ring.background_charge();
  for (std::int64_t w = 0; w <= top; ++w) {
    auto piece = engine.ideal_piece({B.charge, w});
    B.by_weight.emplace_back();
    for (auto &m : piece->standard_monomials()) {
      B.by_weight.back().push_back(B.elements.size());
      B.elements.push_back(Poly::monomial(m));
      B.monomials.push_back(std::move(m));
      B.weights.push_back(w);
    }
  }
  if (opt.check_vanishing) {
    std::size_t extra = engine.quotient_dimension(B.charge, top + 1);
    if (extra != 0)
      throw NonFiniteQuotient("quotient has dimension " + std::to_string(extra) +
                              " at weight " + std::to_string(top + 1) +
                              "; input is likely not quasi-smooth");
  }
  return B;
}

inline JacobianBasis jacobian_basis(const CayleyRing &ring, const BasisOptions &opt = {}) {
  return jacobian_basis(JacobianEngine(ring), opt);
}

/// f = sum_rho a_rho u_rho + Q_S(lambda), exactly.
struct ReductionWitness {
  std::map<std::size_t, Rational> coefficients;
  SuperElement lambda;
};

/// Per-weight reduction against basis and Jacobian ideal, with witnesses.
///
/// For each weight the unknowns are ordered as: basis elements of that
/// weight, then ideal generators (x-partials, then y-partials). The witness
/// is the basic solution of the leftmost independent unknowns, so lambda is
/// canonical for a fixed ring and basis.
class Reducer {
public:
  Reducer(std::shared_ptr<const JacobianEngine> engine, JacobianBasis basis)
      : engine_(std::move(engine)), basis_(std::move(basis)) {}

  const JacobianBasis &basis() const noexcept { return basis_; }
  const CayleyRing &ring() const noexcept { return engine_->ring(); }

  ReductionWitness reduce(const Poly &f) const {
    const CayleyRing &R = ring();
    std::map<std::int64_t, Poly> by_weight;
    for (const auto &[m, c] : f) {
      MultiDegree d = R.degree(m);
      if (d.charge != basis_.charge)
        throw NotCharge0("term of charge " + render_charge(d.charge) +
                         " cannot be reduced in charge " + render_charge(basis_.charge));
      by_weight.try_emplace(d.weight, R.nvars()).first->second.add_term(m, c);
    }
    ReductionWitness out;
    out.lambda = SuperElement(R.nvars());
    for (const auto &[w, fw] : by_weight) {
      auto sys = system(w);
      auto red = sys->echelon.reduce(sys->piece->to_vector(fw));
      if (!red.remainder.empty())
        throw BasisIncomplete(w, std::to_string(red.remainder.size()) +
                                     " monomials left after reduction");
      for (const auto &[id, c] : red.combination) {
        if (id < sys->basis_ids.size()) {
          auto [it, ins] = out.coefficients.try_emplace(sys->basis_ids[id], 0);
          it->second += c;
          if (it->second == 0)
            out.coefficients.erase(it);
        } else {
          const auto &g = sys->piece->generators[id - sys->basis_ids.size()];
          out.lambda.add_term(g.multiplier, OddSet::single(g.partial), c);
        }
      }
    }
    if (!residual(f, out).is_zero())
      throw std::logic_error("reduction witness failed verification");
    return out;
  }

  /// f - sum a_rho u_rho - Q_S(lambda)
  Poly residual(const Poly &f, const ReductionWitness &w) const {
    Poly r = f;
    for (const auto &[rho, c] : w.coefficients)
      r -= basis_.elements.at(rho) * c;
    r -= q_s(w.lambda, ring()).even_part();
    return r;
  }

private:
  struct System {
    std::shared_ptr<const GradedIdealPiece> piece;
    std::vector<std::size_t> basis_ids;
    SparseEchelon echelon;
  };

  std::shared_ptr<const System> system(std::int64_t w) const {
    {
      std::shared_lock lock(mutex_);
      auto it = systems_.find(w);
      if (it != systems_.end())
        return it->second;
    }
    auto sys = std::make_shared<System>();
    sys->piece = engine_->ideal_piece({basis_.charge, w});
    if (w >= 0 && static_cast<std::size_t>(w) < basis_.by_weight.size())
      sys->basis_ids = basis_.by_weight[static_cast<std::size_t>(w)];
    std::uint32_t id = 0;
    for (std::size_t b : sys->basis_ids)
      sys->echelon.insert(sys->piece->to_vector(basis_.elements[b]), id++);
    for (const auto &v : sys->piece->generator_vectors)
      sys->echelon.insert(v, id++);
    std::unique_lock lock(mutex_);
    return systems_.try_emplace(w, std::move(sys)).first->second;
  }

  std::shared_ptr<const JacobianEngine> engine_;
  JacobianBasis basis_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::int64_t, std::shared_ptr<const System>> systems_;
};

inline ReductionWitness reduce_with_witness(const Poly &f, const JacobianBasis &basis,
                                            const CayleyRing &ring) {
  return Reducer(std::make_shared<const JacobianEngine>(ring), basis).reduce(f);
}

} // namespace torflat

#endif // TORFLAT_JACOBIAN_HPP
