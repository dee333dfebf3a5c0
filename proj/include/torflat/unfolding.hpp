#ifndef TORFLAT_UNFOLDING_HPP
#define TORFLAT_UNFOLDING_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "jacobian.hpp"
#include "poly.hpp"
#include "super.hpp"
#include "toric.hpp"

namespace torflat {

/// Sorted multiset of basis indices.
struct MultiIndex {
  std::vector<std::size_t> idx;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::size_t> l) : idx(l) { std::sort(idx.begin(), idx.end()); }
  explicit MultiIndex(std::vector<std::size_t> v) : idx(std::move(v)) {
    std::sort(idx.begin(), idx.end());
  }

  std::size_t size() const noexcept { return idx.size(); }
  std::size_t operator[](std::size_t i) const { return idx[i]; }

  MultiIndex with(std::size_t a) const {
    auto v = idx;
    v.push_back(a);
    return MultiIndex(std::move(v));
  }
  MultiIndex merged(const MultiIndex &o) const {
    auto v = idx;
    v.insert(v.end(), o.idx.begin(), o.idx.end());
    return MultiIndex(std::move(v));
  }

  friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
  friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
};

inline std::string render(const MultiIndex &m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(m[i]);
  }
  return s + ")";
}

/// All sorted multi-indices of the given size over {0..dim-1}, lexicographic.
inline std::vector<MultiIndex> multi_indices(std::size_t dim, std::size_t size) {
  std::vector<MultiIndex> out;
  if (dim == 0)
    return out;
  std::vector<std::size_t> cur(size, 0);
  for (;;) {
    out.emplace_back(cur);
    std::size_t i = size;
    while (i > 0 && cur[i - 1] == dim - 1)
      --i;
    if (i == 0)
      break;
    ++cur[i - 1];
    std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i), cur.end(), cur[i - 1]);
  }
  return out;
}

/// Exponent vector over t^0..t^{dim-1}.
using TMonomial = std::vector<std::uint32_t>;

inline TMonomial t_monomial(const MultiIndex &m, std::size_t dim) {
  TMonomial e(dim, 0);
  for (auto a : m.idx)
    ++e.at(a);
  return e;
}

inline MultiIndex multi_index_of(const TMonomial &e) {
  std::vector<std::size_t> v;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::uint32_t j = 0; j < e[a]; ++j)
      v.push_back(a);
  return MultiIndex(std::move(v));
}

inline std::uint64_t t_degree(const TMonomial &e) {
  std::uint64_t d = 0;
  for (auto x : e)
    d += x;
  return d;
}

/// prod_gamma k_gamma!
inline Integer multiplicity_factorial(const TMonomial &e) {
  Integer r = 1;
  for (auto x : e)
    r *= factorial(x);
  return r;
}

inline std::string render_t_monomial(const TMonomial &e) {
  std::string s;
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (e[a] == 0)
      continue;
    if (!s.empty())
      s += '*';
    s += "t" + std::to_string(a);
    if (e[a] > 1)
      s += '^' + std::to_string(e[a]);
  }
  return s.empty() ? "1" : s;
}

namespace detail {
inline bool value_is_zero(const Rational &v) { return v == 0; }
inline bool value_is_zero(const Poly &v) { return v.is_zero(); }
inline bool value_is_zero(const SuperElement &v) { return v.is_zero(); }
} // namespace detail

/// Power series in t^0..t^{dim-1} with terms of t-degree <= order.
template <typename V>
class TruncatedSeries {
public:
  using Terms = std::map<TMonomial, V>;

  TruncatedSeries() = default;
  TruncatedSeries(std::size_t dim, std::int64_t order) : dim_(dim), order_(order) {}

  std::size_t dim() const noexcept { return dim_; }
  std::int64_t order() const noexcept { return order_; }
  const Terms &terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  const V *find(const TMonomial &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add_term(const TMonomial &e, V v) {
    if (static_cast<std::int64_t>(t_degree(e)) > order_ || detail::value_is_zero(v))
      return;
    auto [it, inserted] = terms_.try_emplace(e, v);
    if (!inserted) {
      it->second += v;
      if (detail::value_is_zero(it->second))
        terms_.erase(it);
    }
  }

  TruncatedSeries &operator+=(const TruncatedSeries &o) {
    for (const auto &[e, v] : o.terms_)
      add_term(e, v);
    return *this;
  }
  TruncatedSeries &operator-=(const TruncatedSeries &o) {
    for (const auto &[e, v] : o.terms_)
      add_term(e, v * Rational(-1));
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b) { return a -= b; }

  /// Drops terms above the given order.
  TruncatedSeries truncated(std::int64_t order) const {
    TruncatedSeries r(dim_, std::min(order, order_));
    for (const auto &[e, v] : terms_)
      r.add_term(e, v);
    return r;
  }

  /// d/dt^a; the result is known one order lower.
  TruncatedSeries derivative(std::size_t a) const {
    TruncatedSeries r(dim_, order_ - 1);
    for (const auto &[e, v] : terms_) {
      if (e.at(a) == 0)
        continue;
      TMonomial d = e;
      --d[a];
      r.add_term(d, v * Rational(e[a]));
    }
    return r;
  }

  /// Coefficient-wise map.
  template <typename W, typename F>
  TruncatedSeries<W> map(F &&f) const {
    TruncatedSeries<W> r(dim_, order_);
    for (const auto &[e, v] : terms_)
      r.add_term(e, f(v));
    return r;
  }

private:
  std::size_t dim_ = 0;
  std::int64_t order_ = 0;
  Terms terms_;
};

/// Cauchy product with a caller-supplied coefficient product.
template <typename R, typename A, typename B, typename Mul>
TruncatedSeries<R> series_product(const TruncatedSeries<A> &a, const TruncatedSeries<B> &b,
                                  Mul &&mul) {
  TruncatedSeries<R> r(a.dim(), std::min(a.order(), b.order()));
  for (const auto &[ea, va] : a)
    for (const auto &[eb, vb] : b) {
      if (static_cast<std::int64_t>(t_degree(ea) + t_degree(eb)) > r.order())
        continue;
      TMonomial e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      r.add_term(e, mul(va, vb));
    }
  return r;
}

struct UnfoldingOptions {
  bool retain_intermediates = false;
};

/// Tables u, a, lambda of the inductive construction, keyed by sorted
/// multi-index. u[{alpha}] is the basis element u_alpha.
class UnfoldingState {
public:
  UnfoldingState(std::shared_ptr<const JacobianEngine> engine, JacobianBasis basis,
                 std::size_t order, UnfoldingOptions opt = {})
      : reducer_(std::make_shared<Reducer>(engine, std::move(basis))), order_(order), opt_(opt) {
    for (std::size_t a = 0; a < dim(); ++a) {
      t_weights_.push_back(1 - this->basis().weights[a]);
      u_.emplace(MultiIndex{a}, this->basis().elements[a]);
    }
  }

  const CayleyRing &ring() const noexcept { return reducer_->ring(); }
  const JacobianBasis &basis() const noexcept { return reducer_->basis(); }
  const Reducer &reducer() const noexcept { return *reducer_; }
  std::size_t dim() const noexcept { return basis().size(); }
  std::size_t order() const noexcept { return order_; }
  const std::vector<std::int64_t> &t_weights() const noexcept { return t_weights_; }

  const std::map<MultiIndex, Poly> &u_table() const noexcept { return u_; }
  const std::map<MultiIndex, std::map<std::size_t, Rational>> &a_table() const noexcept {
    return a_;
  }
  const std::map<MultiIndex, SuperElement> &lambda_table() const noexcept { return lambda_; }
  const std::map<MultiIndex, std::vector<ReductionWitness>> &intermediates() const noexcept {
    return inter_;
  }

  const Poly &u(const MultiIndex &m) const {
    auto it = u_.find(m);
    if (it == u_.end())
      throw MissingTableEntry("u" + render(m));
    return it->second;
  }
  Rational a(const MultiIndex &m, std::size_t rho) const {
    auto it = a_.find(m);
    if (it == a_.end())
      throw MissingTableEntry("a" + render(m));
    auto jt = it->second.find(rho);
    return jt == it->second.end() ? Rational(0) : jt->second;
  }
  const SuperElement &lambda(const MultiIndex &m) const {
    auto it = lambda_.find(m);
    if (it == lambda_.end())
      throw MissingTableEntry("lambda" + render(m));
    return it->second;
  }

  /// 1 - sum_j wt(t^{alpha_j}), the weight every term of u_m must carry.
  std::int64_t expected_u_weight(const MultiIndex &m) const {
    std::int64_t w = 1;
    for (auto a : m.idx)
      w -= t_weights_.at(a);
    return w;
  }

  /// Direct table access for tests, report ingestion and negative controls.
  std::map<MultiIndex, Poly> &mutable_u_table() noexcept { return u_; }
  std::map<MultiIndex, std::map<std::size_t, Rational>> &mutable_a_table() noexcept { return a_; }
  std::map<MultiIndex, SuperElement> &mutable_lambda_table() noexcept { return lambda_; }
  void set_order(std::size_t n) noexcept { order_ = n; }

  /// u^{(i)}: sum over set partitions of the m positions into m - i blocks of
  /// the product of block entries.
  Poly partition_sum(const MultiIndex &m, std::size_t i) const {
    const std::size_t n = m.size();
    if (n == 0 || i >= n)
      throw std::invalid_argument("partition_sum: need 0 <= i < |multi-index|");
    const std::size_t blocks = n - i;
    Poly total(ring().nvars());
    std::vector<std::vector<std::size_t>> parts;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (parts.size() + (n - pos) < blocks)
        return;
      if (pos == n) {
        if (parts.size() != blocks)
          return;
        Poly prod = Poly::constant(ring().nvars(), 1);
        for (const auto &blk : parts) {
          std::vector<std::size_t> v;
          for (auto p : blk)
            v.push_back(m[p]);
          prod = prod * u(MultiIndex(std::move(v)));
          if (prod.is_zero())
            return;
        }
        total += prod;
        return;
      }
      for (std::size_t b = 0; b < parts.size(); ++b) {
        parts[b].push_back(pos);
        rec(pos + 1);
        parts[b].pop_back();
      }
      if (parts.size() < blocks) {
        parts.push_back({pos});
        rec(pos + 1);
        parts.pop_back();
      }
    };
    rec(0);
    return total;
  }

  /// Runs the reduction chain for one multi-index of size l+1 >= 2.
  void step(const MultiIndex &m) {
    const std::size_t l = m.size() - 1;
    if (l < 1)
      throw std::invalid_argument("step needs a multi-index of size at least 2");
    std::vector<ReductionWitness> chain;
    ReductionWitness w = reducer_->reduce(partition_sum(m, 0));
    for (std::size_t i = 1; i < l; ++i) {
      Poly f = partition_sum(m, i) - delta(w.lambda).even_part();
      chain.push_back(std::move(w));
      w = reducer_->reduce(f);
    }
    Poly um = delta(w.lambda).even_part();
    const std::int64_t wt = expected_u_weight(m);
    for (const auto &[mono, c] : um)
      if (ring().degree(mono) != MultiDegree{basis().charge, wt})
        throw std::logic_error("u" + render(m) + " is not homogeneous of degree " +
                               render_degree({basis().charge, wt}));
    u_[m] = std::move(um);
    a_[m] = w.coefficients;
    lambda_.insert_or_assign(m, std::move(w.lambda));
    if (opt_.retain_intermediates)
      inter_[m] = std::move(chain);
  }

  void run() {
    for (std::size_t size = 2; size <= order_; ++size)
      for (const auto &m : multi_indices(dim(), size))
        step(m);
  }

private:
  std::shared_ptr<Reducer> reducer_;
  std::size_t order_;
  UnfoldingOptions opt_;
  std::vector<std::int64_t> t_weights_;
  std::map<MultiIndex, Poly> u_;
  std::map<MultiIndex, std::map<std::size_t, Rational>> a_;
  std::map<MultiIndex, SuperElement> lambda_;
  std::map<MultiIndex, std::vector<ReductionWitness>> inter_;
};

inline UnfoldingState run_unfolding(std::shared_ptr<const JacobianEngine> engine,
                                    const JacobianBasis &basis, std::size_t order,
                                    UnfoldingOptions opt = {}) {
  if (!is_calabi_yau(engine->ring()))
    throw NotCalabiYau("unfolding requires a Calabi-Yau input; background charge is " +
                       render_charge(engine->ring().background_charge()));
  if (order < 1)
    throw std::invalid_argument("order must be at least 1");
  UnfoldingState s(std::move(engine), basis, order, opt);
  s.run();
  return s;
}

inline UnfoldingState run_unfolding(const CayleyRing &ring, const JacobianBasis &basis,
                                    std::size_t order, UnfoldingOptions opt = {}) {
  return run_unfolding(std::make_shared<const JacobianEngine>(ring), basis, order, opt);
}

/// Gamma = sum over t-monomials of u_m / prod k!, to t-degree N.
inline TruncatedSeries<Poly> gamma_series(const UnfoldingState &s) {
  TruncatedSeries<Poly> g(s.dim(), static_cast<std::int64_t>(s.order()));
  for (const auto &[m, u] : s.u_table()) {
    TMonomial e = t_monomial(m, s.dim());
    g.add_term(e, u * Rational(Integer(1), multiplicity_factorial(e)));
  }
  return g;
}

/// d Gamma / dt^alpha, to t-degree N-1.
inline TruncatedSeries<Poly> dgamma(const UnfoldingState &s, std::size_t alpha) {
  return gamma_series(s).derivative(alpha);
}

/// Coefficients of A_{alpha beta}^rho for every rho, to t-degree N-2.
inline std::vector<TruncatedSeries<Rational>> structure_series(const UnfoldingState &s,
                                                               std::size_t alpha,
                                                               std::size_t beta) {
  const std::int64_t ord = static_cast<std::int64_t>(s.order()) - 2;
  std::vector<TruncatedSeries<Rational>> out(s.dim(), TruncatedSeries<Rational>(s.dim(), ord));
  if (ord < 0)
    return out;
  for (std::size_t d = 0; d <= static_cast<std::size_t>(ord); ++d)
    for (const auto &mu : d == 0 ? std::vector<MultiIndex>{MultiIndex{}} : multi_indices(s.dim(), d)) {
      MultiIndex full = mu.with(alpha).with(beta);
      auto it = s.a_table().find(full);
      if (it == s.a_table().end())
        throw MissingTableEntry("a" + render(full));
      TMonomial e = t_monomial(mu, s.dim());
      Rational scale(Integer(1), multiplicity_factorial(e));
      for (const auto &[rho, c] : it->second)
        out.at(rho).add_term(e, c * scale);
    }
  return out;
}

/// Lambda_{alpha beta}, assembled like A, to t-degree N-2.
inline TruncatedSeries<SuperElement> lambda_series(const UnfoldingState &s, std::size_t alpha,
                                                   std::size_t beta) {
  const std::int64_t ord = static_cast<std::int64_t>(s.order()) - 2;
  TruncatedSeries<SuperElement> out(s.dim(), ord);
  if (ord < 0)
    return out;
  for (std::size_t d = 0; d <= static_cast<std::size_t>(ord); ++d)
    for (const auto &mu : d == 0 ? std::vector<MultiIndex>{MultiIndex{}} : multi_indices(s.dim(), d)) {
      TMonomial e = t_monomial(mu, s.dim());
      out.add_term(e, s.lambda(mu.with(alpha).with(beta)) *
                          Rational(Integer(1), multiplicity_factorial(e)));
    }
  return out;
}

} // namespace torflat

#endif // TORFLAT_UNFOLDING_HPP
