#ifndef TORFLAT_INTLATTICE_HPP
#define TORFLAT_INTLATTICE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace torflat {

using IntVector = std::vector<Integer>;

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose rows are the given vectors (all of equal length).
  static IntMatrix from_rows(const std::vector<IntVector> &rows) {
    if (rows.empty())
      return {};
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw std::invalid_argument("ragged rows in IntMatrix::from_rows");
      for (std::size_t j = 0; j < m.cols_; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [first, last) as a new matrix.
  IntMatrix row_block(std::size_t first, std::size_t last) const {
    IntMatrix b(last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        b(i - first, j) = (*this)(i, j);
    return b;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer &z) { return z == 0; });
  }

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("IntMatrix product: dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix &a, const IntVector &v) {
    if (a.cols_ != v.size())
      throw std::invalid_argument("IntMatrix-vector product: dimension mismatch");
    IntVector r(a.rows_, Integer(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        r[i] += a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer &factor) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer &factor) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(i, j) = -(*this)(i, j);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ...
struct SNFDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0)
      ++r;
    return r;
  }

  IntVector elementary_divisors() const {
    IntVector d;
    for (std::size_t i = 0; i < rank(); ++i)
      d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// floor division quotient for integers
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer ceil_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace detail

/// Smith normal form with transformation matrices. Pivots are chosen as the
/// entry of least absolute value (first in row-major order among ties), which
/// makes the result deterministic.
inline SNFDecomposition smith_normal_form(const IntMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix D = A;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block moves to (t, t)
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!best || abs(D(i, j)) < abs(D(best->first, best->second))))
            best = {i, j};
      if (!best)
        break;
      D.swap_rows(t, best->first);
      U.swap_rows(t, best->first);
      D.swap_cols(t, best->second);
      V.swap_cols(t, best->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0)
          continue;
        Integer q = detail::floor_div(D(i, t), D(t, t));
        D.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (D(i, t) != 0)
          dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0)
          continue;
        Integer q = detail::floor_div(D(t, j), D(t, t));
        D.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (D(t, j) != 0)
          dirty = true;
      }
      if (dirty)
        continue;

      // enforce divisibility of the trailing block by the pivot
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender)
        break;
      D.add_row(t, *offender, 1);
      U.add_row(t, *offender, 1);
    }
    if (t < m && t < n && D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

/// Row Hermite normal form of a full-row-rank matrix: upper echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
inline IntMatrix hermite_rows(IntMatrix H) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < H.cols() && row < H.rows(); ++col) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < H.rows(); ++i)
        if (H(i, col) != 0 && (!best || abs(H(i, col)) < abs(H(*best, col))))
          best = i;
      if (!best)
        break;
      H.swap_rows(row, *best);
      bool done = true;
      for (std::size_t i = row + 1; i < H.rows(); ++i) {
        if (H(i, col) == 0)
          continue;
        H.add_row(i, row, -detail::floor_div(H(i, col), H(row, col)));
        if (H(i, col) != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (H(row, col) == 0)
      continue;
    if (H(row, col) < 0)
      H.negate_row(row);
    for (std::size_t i = 0; i < row; ++i)
      H.add_row(i, row, -detail::floor_div(H(i, col), H(row, col)));
    ++row;
  }
  return H;
}

/// Projection Z^rows -> Z^(rows - rank) annihilating the column span of A.
///
/// With A the ray-pairing matrix (row rho = ray e_rho) the columns of the
/// result are the class-group charges of the Cox variables. Rows are put in
/// Hermite normal form so the charge basis is reproducible.
inline IntMatrix free_cokernel_projection(const IntMatrix &A) {
  SNFDecomposition snf = smith_normal_form(A);
  const std::size_t rank = snf.rank();
  for (std::size_t i = 0; i < rank; ++i)
    if (snf.D(i, i) != 1)
      throw TorsionClassGroup("class group has torsion: elementary divisor " +
                              snf.D(i, i).get_str() + " at position " +
                              std::to_string(i + 1));
  if (rank == A.rows())
    return IntMatrix(0, A.rows());
  return hermite_rows(snf.U.row_block(rank, A.rows()));
}

/// Integer right inverse R of a surjective matrix P (P * R = identity).
inline IntMatrix integer_right_inverse(const IntMatrix &P) {
  SNFDecomposition snf = smith_normal_form(P);
  if (snf.rank() != P.rows())
    throw std::invalid_argument("integer_right_inverse: matrix is not of full row rank");
  for (std::size_t i = 0; i < P.rows(); ++i)
    if (snf.D(i, i) != 1)
      throw std::invalid_argument("integer_right_inverse: matrix is not surjective over Z");
  // P = U^-1 [I 0] V^-1, so R = V [I; 0] U
  IntMatrix embed(P.cols(), P.rows());
  for (std::size_t i = 0; i < P.rows(); ++i)
    embed(i, i) = 1;
  return snf.V * embed * snf.U;
}

/// One constraint <normal, m> >= offset.
struct Inequality {
  IntVector normal;
  Integer offset;
};

/// Intersection of half-spaces in Z^dimension.
struct LatticePolytope {
  std::size_t dimension = 0;
  std::vector<Inequality> inequalities;
};

namespace detail {

// Divide a constraint by the gcd of all its coefficients (exact, no tightening).
inline void normalize(Inequality &q) {
  Integer g = 0;
  for (const auto &a : q.normal)
    g = gcd(g, a);
  g = gcd(g, q.offset);
  if (g > 1) {
    for (auto &a : q.normal)
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q.offset.get_mpz_t(), q.offset.get_mpz_t(), g.get_mpz_t());
  }
}

inline void dedupe(std::vector<Inequality> &sys) {
  std::sort(sys.begin(), sys.end(), [](const Inequality &a, const Inequality &b) {
    if (a.normal != b.normal)
      return a.normal < b.normal;
    return a.offset < b.offset;
  });
  // for equal normals only the largest offset matters
  std::vector<Inequality> out;
  for (auto &q : sys) {
    if (!out.empty() && out.back().normal == q.normal)
      out.back().offset = q.offset;
    else
      out.push_back(std::move(q));
  }
  sys = std::move(out);
}

/// Eliminates variable var (rational Fourier-Motzkin).
inline std::vector<Inequality> eliminate(const std::vector<Inequality> &sys, std::size_t var) {
  std::vector<Inequality> out, pos, neg;
  for (const auto &q : sys) {
    if (q.normal[var] > 0)
      pos.push_back(q);
    else if (q.normal[var] < 0)
      neg.push_back(q);
    else
      out.push_back(q);
  }
  for (const auto &p : pos)
    for (const auto &q : neg) {
      Integer a = p.normal[var], b = -q.normal[var];
      Inequality c;
      c.normal.resize(p.normal.size());
      for (std::size_t j = 0; j < p.normal.size(); ++j)
        c.normal[j] = b * p.normal[j] + a * q.normal[j];
      c.offset = b * p.offset + a * q.offset;
      normalize(c);
      out.push_back(std::move(c));
    }
  dedupe(out);
  return out;
}

struct Bounds {
  std::optional<Integer> lower, upper;
  bool infeasible = false;
};

/// Integer bounds on variable var after projecting out all others.
inline Bounds project_bounds(std::vector<Inequality> sys, std::size_t var) {
  const std::size_t dim = sys.empty() ? 0 : sys.front().normal.size();
  for (std::size_t j = 0; j < dim; ++j)
    if (j != var)
      sys = eliminate(sys, j);
  Bounds b;
  for (const auto &q : sys) {
    const Integer &a = q.normal[var];
    if (a == 0) {
      if (q.offset > 0)
        b.infeasible = true;
    } else if (a > 0) {
      Integer lo = ceil_div(q.offset, a);
      if (!b.lower || lo > *b.lower)
        b.lower = lo;
    } else {
      Integer hi = floor_div(q.offset, a);
      if (!b.upper || hi < *b.upper)
        b.upper = hi;
    }
  }
  if (b.lower && b.upper && *b.lower > *b.upper)
    b.infeasible = true;
  return b;
}

inline void enumerate_rec(const std::vector<Inequality> &sys, std::size_t var,
                          std::size_t dim, IntVector &point,
                          std::vector<IntVector> &out) {
  if (var == dim) {
    out.push_back(point);
    return;
  }
  Bounds b = project_bounds(sys, var);
  if (b.infeasible)
    return;
  if (!b.lower || !b.upper)
    throw UnboundedPolytope("lattice polytope is unbounded in coordinate " +
                            std::to_string(var + 1));
  for (Integer v = *b.lower; v <= *b.upper; ++v) {
    // substitute m[var] = v
    std::vector<Inequality> sub;
    sub.reserve(sys.size());
    for (const auto &q : sys) {
      Inequality s = q;
      s.offset -= q.normal[var] * v;
      s.normal[var] = 0;
      sub.push_back(std::move(s));
    }
    point[var] = v;
    enumerate_rec(sub, var + 1, dim, point, out);
  }
}

} // namespace detail

/// Checks the recession cone {m : <normal, m> >= 0} is {0}.
inline bool is_bounded(const LatticePolytope &P) {
  std::vector<Inequality> cone;
  for (const auto &q : P.inequalities)
    cone.push_back({q.normal, Integer(0)});
  for (std::size_t var = 0; var < P.dimension; ++var) {
    auto b = detail::project_bounds(cone, var);
    if (!b.lower || !b.upper)
      return false;
  }
  return true;
}

/// All integer points of a bounded polytope, in lexicographic order.
/// Throws UnboundedPolytope when the (nonempty) solution set is unbounded.
inline std::vector<IntVector> enumerate_lattice_points(const LatticePolytope &P) {
  for (const auto &q : P.inequalities)
    if (q.normal.size() != P.dimension)
      throw std::invalid_argument("inequality normal has wrong dimension");
  std::vector<IntVector> out;
  if (P.dimension == 0) {
    for (const auto &q : P.inequalities)
      if (q.offset > 0)
        return out;
    out.emplace_back();
    return out;
  }
  std::vector<Inequality> sys = P.inequalities;
  for (auto &q : sys)
    detail::normalize(q);
  // infeasible systems are empty regardless of recession directions
  if (detail::project_bounds(sys, 0).infeasible)
    return out;
  if (!is_bounded(P))
    throw UnboundedPolytope("lattice polytope is unbounded");
  IntVector point(P.dimension);
  detail::enumerate_rec(sys, 0, P.dimension, point, out);
  return out;
}

} // namespace torflat

#endif // TORFLAT_INTLATTICE_HPP
