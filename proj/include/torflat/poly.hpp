#ifndef TORFLAT_POLY_HPP
#define TORFLAT_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace torflat {

/// Exponent vector over q_1..q_{r+k}; positions [0, k) are y's, [k, r+k) x's.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t nvars() const noexcept { return exps.size(); }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto e : exps)
      d += e;
    return d;
  }

  bool is_one() const {
    for (auto e : exps)
      if (e != 0)
        return false;
    return true;
  }

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exps[i] = power;
    return m;
  }

  friend Monomial operator*(const Monomial &a, const Monomial &b) {
    if (a.exps.size() != b.exps.size())
      throw std::invalid_argument("monomial product over different rings");
    Monomial r(a.exps.size());
    for (std::size_t i = 0; i < a.exps.size(); ++i)
      r.exps[i] = a.exps[i] + b.exps[i];
    return r;
  }

  friend bool operator==(const Monomial &, const Monomial &) = default;
};

/// Graded reverse lexicographic order, as a strict "comes first" relation:
/// higher total degree first; ties broken by the last differing variable,
/// where the smaller exponent comes first.
struct GrevlexFirst {
  bool operator()(const Monomial &a, const Monomial &b) const {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db)
      return da > db;
    for (std::size_t i = a.exps.size(); i-- > 0;)
      if (a.exps[i] != b.exps[i])
        return a.exps[i] < b.exps[i];
    return false;
  }
};

/// Printable names of q_1..q_{r+k}.
struct VariableNames {
  std::vector<std::string> names;

  /// Cayley ring convention: y1..yk then x1..xr.
  static VariableNames cayley(std::size_t k, std::size_t r) {
    VariableNames v;
    for (std::size_t i = 1; i <= k; ++i)
      v.names.push_back("y" + std::to_string(i));
    for (std::size_t i = 1; i <= r; ++i)
      v.names.push_back("x" + std::to_string(i));
    return v;
  }
};

inline std::string render_monomial(const Monomial &m, const VariableNames &names) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0)
      continue;
    if (!s.empty())
      s += '*';
    s += names.names.at(i);
    if (m.exps[i] > 1)
      s += '^' + std::to_string(m.exps[i]);
  }
  return s;
}

/// Sparse polynomial with exact rational coefficients. Never stores a zero
/// coefficient; iteration follows GrevlexFirst.
class Poly {
public:
  using Terms = std::map<Monomial, Rational, GrevlexFirst>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational &c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static Poly monomial(const Monomial &m, const Rational &c = 1) {
    Poly p(m.nvars());
    p.add_term(m, c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    return monomial(Monomial::variable(nvars, i));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms &terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Rational coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial &m, const Rational &c) {
    if (c == 0)
      return;
    adopt(m.nvars());
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  Poly &operator+=(const Poly &o) {
    for (const auto &[m, c] : o.terms_)
      add_term(m, c);
    adopt(o.nvars_);
    return *this;
  }
  Poly &operator-=(const Poly &o) {
    for (const auto &[m, c] : o.terms_)
      add_term(m, -c);
    adopt(o.nvars_);
    return *this;
  }
  Poly &operator*=(const Rational &s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[m, c] : terms_)
      c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational &s) { return a *= s; }
  friend Poly operator*(const Rational &s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly &a, const Poly &b) {
    Poly r(a.nvars_ ? a.nvars_ : b.nvars_);
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_)
        r.add_term(ma * mb, ca * cb);
    return r;
  }

  /// Product with a single monomial (shifts every exponent).
  Poly times(const Monomial &m, const Rational &c = 1) const {
    Poly r(nvars_ ? nvars_ : m.nvars());
    if (c == 0)
      return r;
    for (const auto &[t, v] : terms_)
      r.terms_.emplace_hint(r.terms_.end(), t * m, v * c);
    return r;
  }

  /// d/dq_i
  Poly derivative(std::size_t i) const {
    Poly r(nvars_);
    for (const auto &[m, c] : terms_) {
      if (m.exps.at(i) == 0)
        continue;
      Monomial d = m;
      --d.exps[i];
      r.add_term(d, c * m.exps[i]);
    }
    return r;
  }

  friend bool operator==(const Poly &a, const Poly &b) { return a.terms_ == b.terms_; }

private:
  void adopt(std::size_t n) {
    if (nvars_ == 0)
      nvars_ = n;
    else if (n != 0 && n != nvars_)
      throw std::invalid_argument("polynomial arithmetic over different rings");
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Canonical text: terms in GrevlexFirst order, "c*var^e" factors joined by
/// '*', separated by " + " / " - ". Zero renders as "0".
inline std::string render(const Poly &p, const VariableNames &names) {
  if (p.is_zero())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &[m, c] : p) {
    Rational mag = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    std::string mono = render_monomial(m, names);
    if (mono.empty())
      s += to_string(mag);
    else if (mag == 1)
      s += mono;
    else
      s += to_string(mag) + "*" + mono;
  }
  return s;
}

/// Splits f by a grading; keys with a zero component are absent.
template <typename Degree, typename DegreeOf>
std::map<Degree, Poly> homogeneous_components(const Poly &f, DegreeOf &&degree_of) {
  std::map<Degree, Poly> out;
  for (const auto &[m, c] : f) {
    auto [it, inserted] = out.try_emplace(degree_of(m), f.nvars());
    it->second.add_term(m, c);
  }
  return out;
}

} // namespace torflat

#endif // TORFLAT_POLY_HPP
