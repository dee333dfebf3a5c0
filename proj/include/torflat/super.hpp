#ifndef TORFLAT_SUPER_HPP
#define TORFLAT_SUPER_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "toric.hpp"

namespace torflat {

/// Subset of {0..nvars-1} as a bitmask; iteration is in increasing index.
struct OddSet {
  std::uint64_t bits = 0;

  static constexpr std::size_t max_vars = 64;

  static OddSet single(std::size_t i) { return {std::uint64_t{1} << i}; }

  bool contains(std::size_t i) const { return (bits >> i) & 1u; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits)); }
  bool empty() const { return bits == 0; }

  /// Number of members strictly smaller than i.
  std::size_t count_below(std::size_t i) const {
    if (i >= max_vars)
      return size();
    return static_cast<std::size_t>(std::popcount(bits & ((std::uint64_t{1} << i) - 1)));
  }
  OddSet without(std::size_t i) const { return {bits & ~(std::uint64_t{1} << i)}; }
  OddSet with(std::size_t i) const { return {bits | (std::uint64_t{1} << i)}; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits; b; b &= b - 1)
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend bool operator==(OddSet, OddSet) = default;
};

/// Sorted index lists compared by length, then lexicographically.
struct OddSetFirst {
  bool operator()(OddSet a, OddSet b) const {
    if (a.size() != b.size())
      return a.size() < b.size();
    std::uint64_t diff = a.bits ^ b.bits;
    if (!diff)
      return false;
    return (a.bits >> std::countr_zero(diff)) & 1u;
  }
};

struct GradedKey {
  OddSet odd;
  Monomial mono;
  friend bool operator==(const GradedKey &, const GradedKey &) = default;
};

struct GradedKeyOrder {
  bool operator()(const GradedKey &a, const GradedKey &b) const {
    if (a.odd.bits != b.odd.bits)
      return OddSetFirst{}(a.odd, b.odd);
    return GrevlexFirst{}(a.mono, b.mono);
  }
};

namespace detail {

/// Sparse linear combination of (odd set, monomial) basis vectors. The Tag
/// keeps super-elements and differential forms apart as types.
template <typename Tag>
class GradedElement {
public:
  using Terms = std::map<GradedKey, Rational, GradedKeyOrder>;

  GradedElement() = default;
  explicit GradedElement(std::size_t nvars) : nvars_(nvars) {
    if (nvars > OddSet::max_vars)
      throw std::invalid_argument("at most 64 variables are supported");
  }

  static GradedElement term(const Monomial &m, OddSet odd, const Rational &c = 1) {
    GradedElement e(m.nvars());
    e.add_term(m, odd, c);
    return e;
  }
  static GradedElement from_poly(const Poly &p, OddSet odd = {}) {
    GradedElement e(p.nvars());
    for (const auto &[m, c] : p)
      e.add_term(m, odd, c);
    return e;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms &terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coefficient(const Monomial &m, OddSet odd) const {
    auto it = terms_.find(GradedKey{odd, m});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial &m, OddSet odd, const Rational &c) {
    if (c == 0)
      return;
    adopt(m.nvars());
    auto [it, inserted] = terms_.try_emplace(GradedKey{odd, m}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  /// Part with empty odd set, as a polynomial.
  Poly even_part() const {
    Poly p(nvars_);
    for (const auto &[k, c] : terms_)
      if (k.odd.empty())
        p.add_term(k.mono, c);
    return p;
  }

  /// Coefficient polynomial of a fixed odd set.
  Poly component(OddSet odd) const {
    Poly p(nvars_);
    for (const auto &[k, c] : terms_)
      if (k.odd == odd)
        p.add_term(k.mono, c);
    return p;
  }

  /// Sizes of the odd sets present.
  std::vector<std::size_t> odd_sizes() const {
    std::vector<std::size_t> out;
    for (const auto &[k, c] : terms_)
      if (out.empty() || out.back() != k.odd.size())
        out.push_back(k.odd.size());
    return out;
  }

  GradedElement &operator+=(const GradedElement &o) {
    for (const auto &[k, c] : o.terms_)
      add_term(k.mono, k.odd, c);
    adopt(o.nvars_);
    return *this;
  }
  GradedElement &operator-=(const GradedElement &o) {
    for (const auto &[k, c] : o.terms_)
      add_term(k.mono, k.odd, -c);
    adopt(o.nvars_);
    return *this;
  }
  GradedElement &operator*=(const Rational &s) {
    if (s == 0)
      terms_.clear();
    else
      for (auto &[k, c] : terms_)
        c *= s;
    return *this;
  }

  friend GradedElement operator+(GradedElement a, const GradedElement &b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement &b) { return a -= b; }
  friend GradedElement operator-(GradedElement a) { return a *= Rational(-1); }
  friend GradedElement operator*(GradedElement a, const Rational &s) { return a *= s; }
  friend GradedElement operator*(const Rational &s, GradedElement a) { return a *= s; }

  /// Multiplication by an even polynomial (no signs).
  friend GradedElement operator*(const Poly &p, const GradedElement &e) {
    GradedElement r(e.nvars_ ? e.nvars_ : p.nvars());
    for (const auto &[m, c] : p)
      for (const auto &[k, v] : e.terms_)
        r.add_term(m * k.mono, k.odd, c * v);
    return r;
  }

  friend bool operator==(const GradedElement &a, const GradedElement &b) {
    return a.terms_ == b.terms_;
  }

private:
  void adopt(std::size_t n) {
    if (nvars_ == 0)
      nvars_ = n;
    else if (n != 0 && n != nvars_)
      throw std::invalid_argument("graded arithmetic over different rings");
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

struct SuperTag {};
struct FormTag {};

// Sign of the product of two sorted odd monomials: (-1)^(pairs out of order).
inline int koszul_sign(OddSet a, OddSet b) {
  std::size_t swaps = 0;
  for (std::uint64_t bb = b.bits; bb; bb &= bb - 1) {
    std::size_t j = static_cast<std::size_t>(std::countr_zero(bb));
    swaps += a.size() - a.count_below(j + 1);
  }
  return swaps % 2 ? -1 : 1;
}

} // namespace detail

/// Element of A[eta_1..eta_{r+k}]; cohomological degree of a term = -|odd set|.
using SuperElement = detail::GradedElement<detail::SuperTag>;

/// Polynomial differential form; odd set = the dq's present, form degree = size.
using FormElement = detail::GradedElement<detail::FormTag>;

inline SuperElement eta(std::size_t nvars, std::size_t i) {
  return SuperElement::term(Monomial(nvars), OddSet::single(i));
}

inline FormElement dq(std::size_t nvars, std::size_t i) {
  return FormElement::term(Monomial(nvars), OddSet::single(i));
}

/// Super-commutative product; Koszul signs from sorting the odd indices.
inline SuperElement super_multiply(const SuperElement &a, const SuperElement &b) {
  SuperElement r(a.nvars() ? a.nvars() : b.nvars());
  for (const auto &[ka, ca] : a)
    for (const auto &[kb, cb] : b) {
      if (ka.odd.bits & kb.odd.bits)
        continue;
      int s = detail::koszul_sign(ka.odd, kb.odd);
      r.add_term(ka.mono * kb.mono, OddSet{ka.odd.bits | kb.odd.bits},
                 Rational(s * ca * cb));
    }
  return r;
}

/// Exterior product of forms (same sign rule).
inline FormElement form_wedge(const FormElement &a, const FormElement &b) {
  FormElement r(a.nvars() ? a.nvars() : b.nvars());
  for (const auto &[ka, ca] : a)
    for (const auto &[kb, cb] : b) {
      if (ka.odd.bits & kb.odd.bits)
        continue;
      int s = detail::koszul_sign(ka.odd, kb.odd);
      r.add_term(ka.mono * kb.mono, OddSet{ka.odd.bits | kb.odd.bits},
                 Rational(s * ca * cb));
    }
  return r;
}

/// Left odd derivative d/d(eta_i): removes eta_i with sign
/// (-1)^(number of smaller indices present).
inline SuperElement odd_derivative(const SuperElement &e, std::size_t i) {
  SuperElement r(e.nvars());
  for (const auto &[k, c] : e) {
    if (!k.odd.contains(i))
      continue;
    r.add_term(k.mono, k.odd.without(i), k.odd.count_below(i) % 2 ? Rational(-c) : Rational(c));
  }
  return r;
}

/// Delta = sum_i d/dq_i d/deta_i. Raises cohomological degree by one.
inline SuperElement delta(const SuperElement &e) {
  SuperElement r(e.nvars());
  for (const auto &[k, c] : e)
    for (std::size_t i : k.odd.indices()) {
      std::uint32_t p = k.mono.exps[i];
      if (p == 0)
        continue;
      Monomial m = k.mono;
      --m.exps[i];
      Rational v = c * p;
      r.add_term(m, k.odd.without(i), k.odd.count_below(i) % 2 ? Rational(-v) : Rational(v));
    }
  return r;
}

/// Q_f = sum_i (df/dq_i) d/deta_i for an arbitrary even polynomial f.
inline SuperElement q_f(const SuperElement &e, const std::vector<Poly> &partials) {
  SuperElement r(e.nvars());
  for (const auto &[k, c] : e)
    for (std::size_t i : k.odd.indices()) {
      const Poly &d = partials.at(i);
      if (d.is_zero())
        continue;
      Rational s = k.odd.count_below(i) % 2 ? Rational(-c) : Rational(c);
      OddSet rest = k.odd.without(i);
      for (const auto &[m, v] : d)
        r.add_term(m * k.mono, rest, s * v);
    }
  return r;
}

inline std::vector<Poly> gradient(const Poly &f, std::size_t nvars) {
  std::vector<Poly> g;
  for (std::size_t i = 0; i < nvars; ++i)
    g.push_back(f.derivative(i));
  return g;
}

inline SuperElement q_f(const SuperElement &e, const Poly &f) {
  return q_f(e, gradient(f, e.nvars() ? e.nvars() : f.nvars()));
}

inline SuperElement q_s(const SuperElement &e, const CayleyRing &ring) {
  std::vector<Poly> partials;
  for (std::size_t i = 0; i < ring.nvars(); ++i)
    partials.push_back(ring.partial(i));
  return q_f(e, partials);
}

inline SuperElement k_s(const SuperElement &e, const CayleyRing &ring) {
  return q_s(e, ring) + delta(e);
}

/// Common cohomological degree of all terms; nullopt for zero.
/// Throws InhomogeneousCohDegree when terms disagree.
inline std::optional<int> coh_degree(const SuperElement &e) {
  auto sizes = e.odd_sizes();
  if (sizes.empty())
    return std::nullopt;
  if (sizes.size() > 1)
    throw InhomogeneousCohDegree("element mixes cohomological degrees");
  return -static_cast<int>(sizes.front());
}

/// l2 descendant of an operator K: K(ab) - K(a)b - (-1)^|a| a K(b).
template <typename Op>
SuperElement ell2(const SuperElement &a, const SuperElement &b, Op &&K) {
  auto deg = coh_degree(a);
  SuperElement r = K(super_multiply(a, b));
  r -= super_multiply(K(a), b);
  SuperElement t = super_multiply(a, K(b));
  if (deg && (*deg % 2 != 0))
    r += t;
  else
    r -= t;
  return r;
}

inline SuperElement ell2_ks(const SuperElement &a, const SuperElement &b,
                            const CayleyRing &ring) {
  return ell2(a, b, [&ring](const SuperElement &x) { return k_s(x, ring); });
}

inline SuperElement ell2_delta(const SuperElement &a, const SuperElement &b) {
  return ell2(a, b, [](const SuperElement &x) { return delta(x); });
}

// Gradings of homogeneous super-element terms: ch(eta_i) = -ch(q_i),
// wt(eta_i) = 1 - wt(q_i).

inline MultiDegree term_degree(const CayleyRing &ring, const GradedKey &k) {
  MultiDegree d = ring.degree(k.mono);
  for (std::size_t i : k.odd.indices()) {
    const auto &q = ring.degree_of(i);
    for (std::size_t j = 0; j < d.charge.size(); ++j)
      d.charge[j] -= q.charge[j];
    d.weight += 1 - q.weight;
  }
  return d;
}

/// Degree of a form term with deg dq_i := deg q_i.
inline MultiDegree form_term_degree(const CayleyRing &ring, const GradedKey &k) {
  MultiDegree d = ring.degree(k.mono);
  for (std::size_t i : k.odd.indices())
    d += ring.degree_of(i);
  return d;
}

/// The sign-decorated bijection q^u eta_I -> +-q^u dq_{complement of I}.
/// With 0-based indices the sign is (-1)^(sum of I).
inline FormElement mu(const SuperElement &e) {
  const std::size_t n = e.nvars();
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  FormElement r(n);
  for (const auto &[k, c] : e) {
    std::size_t s = 0;
    for (std::size_t i : k.odd.indices())
      s += i;
    r.add_term(k.mono, OddSet{full & ~k.odd.bits}, s % 2 ? Rational(-c) : Rational(c));
  }
  return r;
}

inline SuperElement mu_inverse(const FormElement &w) {
  const std::size_t n = w.nvars();
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  SuperElement r(n);
  for (const auto &[k, c] : w) {
    OddSet odd{full & ~k.odd.bits};
    std::size_t s = 0;
    for (std::size_t i : odd.indices())
      s += i;
    r.add_term(k.mono, odd, s % 2 ? Rational(-c) : Rational(c));
  }
  return r;
}

/// Exterior derivative d(f dq_I) = sum_j df/dq_j dq_j ^ dq_I.
inline FormElement form_d(const FormElement &w) {
  FormElement r(w.nvars());
  for (const auto &[k, c] : w)
    for (std::size_t j = 0; j < k.mono.exps.size(); ++j) {
      if (k.odd.contains(j) || k.mono.exps[j] == 0)
        continue;
      Monomial m = k.mono;
      --m.exps[j];
      Rational v = c * k.mono.exps[j];
      r.add_term(m, k.odd.with(j), k.odd.count_below(j) % 2 ? Rational(-v) : Rational(v));
    }
  return r;
}

/// df ^ w
inline FormElement wedge_df(const FormElement &w, const Poly &f) {
  FormElement df(w.nvars() ? w.nvars() : f.nvars());
  for (std::size_t j = 0; j < df.nvars(); ++j) {
    Poly d = f.derivative(j);
    for (const auto &[m, c] : d)
      df.add_term(m, OddSet::single(j), c);
  }
  return form_wedge(df, w);
}

inline FormElement wedge_ds(const FormElement &w, const CayleyRing &ring) {
  return wedge_df(w, ring.potential());
}

/// D_S = d + dS ^ -
inline FormElement twisted_d(const FormElement &w, const CayleyRing &ring) {
  return form_d(w) + wedge_ds(w, ring);
}

/// D_{lambda,f} = lambda d + df ^ -
inline FormElement d_lambda_f(const FormElement &w, const Rational &lambda, const Poly &f) {
  return form_d(w) * lambda + wedge_df(w, f);
}

/// Contraction with the Euler field sum_i phi_i q_i d/dq_i:
/// dq_{i_1}^..^dq_{i_l} -> sum_s (-1)^(s-1) phi_{i_s} q_{i_s} (omit dq_{i_s}).
inline FormElement contract_euler(const FormElement &w, const std::vector<std::int64_t> &phi) {
  FormElement r(w.nvars());
  for (const auto &[k, c] : w)
    for (std::size_t i : k.odd.indices()) {
      if (phi.at(i) == 0)
        continue;
      Monomial m = k.mono;
      ++m.exps[i];
      Rational v = c * phi[i];
      r.add_term(m, k.odd.without(i), k.odd.count_below(i) % 2 ? Rational(-v) : Rational(v));
    }
  return r;
}

/// epsilon_{w,S} = D_S theta_w + theta_w D_S, computed as the composite.
inline FormElement epsilon_w_s(const FormElement &w, const CayleyRing &ring) {
  const auto wt = ring.weight_functional();
  return twisted_d(contract_euler(w, wt), ring) + contract_euler(twisted_d(w, ring), wt);
}

namespace detail {

template <typename Tag>
std::string render_graded(const GradedElement<Tag> &e, const VariableNames &names,
                          const std::string &odd_prefix) {
  if (e.is_zero())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &[k, c] : e) {
    Rational mag = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    std::string body = render_monomial(k.mono, names);
    for (std::size_t i : k.odd.indices()) {
      if (!body.empty())
        body += '*';
      body += odd_prefix + names.names.at(i);
    }
    if (body.empty())
      s += to_string(mag);
    else if (mag == 1)
      s += body;
    else
      s += to_string(mag) + "*" + body;
  }
  return s;
}

} // namespace detail

/// Canonical text, e.g. "3*y1*x1^2*eta_x1*eta_x2"; eta's in increasing index.
inline std::string render(const SuperElement &e, const VariableNames &names) {
  return detail::render_graded(e, names, "eta_");
}

/// Canonical text of a form, e.g. "x1*dx2*dx3".
inline std::string render(const FormElement &w, const VariableNames &names) {
  return detail::render_graded(w, names, "d");
}

} // namespace torflat

#endif // TORFLAT_SUPER_HPP
