#ifndef TORFLAT_PROBLEM_HPP
#define TORFLAT_PROBLEM_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "intlattice.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "toric.hpp"
#include "verify.hpp"

namespace torflat {

/// A problem file, line by line:
///
///   # comment
///   ray 1 0
///   ray 0 1
///   ray -1 -1
///   hypersurface
///   term 1 3 0 0
///   term 1/2 0 3 0
///   order 4
///   monomial_order grevlex
///   retain_intermediates
///   checks all
///
/// `term` lines carry a rational coefficient followed by one exponent per ray
/// and belong to the most recent `hypersurface`.
struct ProblemTerm {
  Rational coefficient;
  std::vector<std::uint32_t> exponents;
  friend bool operator==(const ProblemTerm &, const ProblemTerm &) = default;
};

struct ProblemFile {
  std::vector<std::vector<std::int64_t>> rays;
  std::vector<std::vector<ProblemTerm>> hypersurfaces;
  std::size_t order = 2;
  std::string monomial_order = "grevlex";
  bool retain_intermediates = false;
  CheckSet checks = CheckSet::all;
  friend bool operator==(const ProblemFile &, const ProblemFile &) = default;
};

inline std::string check_set_name(CheckSet c) {
  switch (c) {
  case CheckSet::all:
    return "all";
  case CheckSet::fqm2:
    return "fqm2";
  case CheckSet::axioms:
    return "axioms";
  case CheckSet::weights:
    return "weights";
  case CheckSet::euler:
    return "euler";
  }
  return "all";
}

inline std::optional<CheckSet> parse_check_set(std::string_view s) {
  for (auto c : {CheckSet::all, CheckSet::fqm2, CheckSet::axioms, CheckSet::weights,
                 CheckSet::euler})
    if (s == check_set_name(c))
      return c;
  return std::nullopt;
}

namespace detail {

struct Token {
  std::string text;
  std::size_t column; // 1-based
};

inline std::vector<Token> tokenize(const std::string &line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size() || line[i] == '#')
      break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline std::int64_t parse_int_token(const Token &t, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t.text, &used);
    if (used != t.text.size())
      throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception &) {
    throw ParseError(line, t.column, "expected an integer, got '" + t.text + "'");
  }
}

} // namespace detail

inline ProblemFile parse_problem(std::string_view text) {
  ProblemFile p;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t ln = 0;
  struct PendingTerm {
    std::size_t line, column, hyper, count;
  };
  std::vector<PendingTerm> pending;

  while (std::getline(in, line)) {
    ++ln;
    auto toks = detail::tokenize(line);
    if (toks.empty())
      continue;
    const std::string &kw = toks[0].text;
    if (kw == "ray") {
      if (toks.size() < 2)
        throw ParseError(ln, toks[0].column, "ray needs at least one coordinate");
      std::vector<std::int64_t> v;
      for (std::size_t i = 1; i < toks.size(); ++i)
        v.push_back(detail::parse_int_token(toks[i], ln));
      if (!p.rays.empty() && v.size() != p.rays.front().size())
        throw ParseError(ln, toks[1].column,
                         "ray has " + std::to_string(v.size()) + " coordinates, expected " +
                             std::to_string(p.rays.front().size()));
      p.rays.push_back(std::move(v));
    } else if (kw == "hypersurface") {
      if (toks.size() != 1)
        throw ParseError(ln, toks[1].column, "hypersurface takes no arguments");
      p.hypersurfaces.emplace_back();
    } else if (kw == "term") {
      if (p.hypersurfaces.empty())
        throw ParseError(ln, toks[0].column, "term before any hypersurface");
      if (toks.size() < 2)
        throw ParseError(ln, toks[0].column, "term needs a coefficient");
      ProblemTerm t;
      try {
        t.coefficient = parse_rational(toks[1].text);
      } catch (const std::invalid_argument &e) {
        throw ParseError(ln, toks[1].column, e.what());
      }
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto v = detail::parse_int_token(toks[i], ln);
        if (v < 0)
          throw ParseError(ln, toks[i].column, "exponents must be nonnegative");
        t.exponents.push_back(static_cast<std::uint32_t>(v));
      }
      pending.push_back({ln, toks[0].column, p.hypersurfaces.size(), t.exponents.size()});
      p.hypersurfaces.back().push_back(std::move(t));
    } else if (kw == "order") {
      if (toks.size() != 2)
        throw ParseError(ln, toks[0].column, "order takes one integer");
      auto v = detail::parse_int_token(toks[1], ln);
      if (v < 1)
        throw ParseError(ln, toks[1].column, "order must be at least 1");
      p.order = static_cast<std::size_t>(v);
    } else if (kw == "monomial_order") {
      if (toks.size() != 2 || toks[1].text != "grevlex")
        throw ParseError(ln, toks.size() > 1 ? toks[1].column : toks[0].column,
                         "only 'grevlex' is supported");
      p.monomial_order = toks[1].text;
    } else if (kw == "retain_intermediates") {
      p.retain_intermediates = true;
    } else if (kw == "checks") {
      std::optional<CheckSet> c;
      if (toks.size() == 2)
        c = parse_check_set(toks[1].text);
      if (!c)
        throw ParseError(ln, toks.size() > 1 ? toks[1].column : toks[0].column,
                         "checks must be one of all|fqm2|axioms|weights|euler");
      p.checks = *c;
    } else {
      throw ParseError(ln, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }

  if (p.rays.empty())
    throw ParseError(ln + 1, 1, "no rays given");
  const std::size_t r = p.rays.size(), n = p.rays.front().size();
  if (r < n)
    throw ParseError(ln + 1, 1, "need at least as many rays as the dimension");
  if (p.hypersurfaces.empty())
    throw ParseError(ln + 1, 1, "no hypersurface given");
  for (const auto &t : pending)
    if (t.count != r)
      throw ParseError(t.line, t.column,
                       "hypersurface " + std::to_string(t.hyper) + ": term has " +
                           std::to_string(t.count) + " exponents, expected " +
                           std::to_string(r));
  for (std::size_t i = 0; i < p.hypersurfaces.size(); ++i)
    if (p.hypersurfaces[i].empty())
      throw ParseError(ln + 1, 1, "hypersurface " + std::to_string(i + 1) + " has no terms");
  return p;
}

inline std::string render_problem(const ProblemFile &p) {
  std::ostringstream o;
  for (const auto &ray : p.rays) {
    o << "ray";
    for (auto v : ray)
      o << ' ' << v;
    o << '\n';
  }
  for (const auto &h : p.hypersurfaces) {
    o << "hypersurface\n";
    for (const auto &t : h) {
      o << "term " << to_string(t.coefficient);
      for (auto e : t.exponents)
        o << ' ' << e;
      o << '\n';
    }
  }
  o << "order " << p.order << '\n';
  o << "monomial_order " << p.monomial_order << '\n';
  if (p.retain_intermediates)
    o << "retain_intermediates\n";
  o << "checks " << check_set_name(p.checks) << '\n';
  return o.str();
}

inline ClassGrading problem_grading(const ProblemFile &p) {
  std::vector<IntVector> rays;
  for (const auto &ray : p.rays) {
    IntVector v;
    for (auto x : ray)
      v.push_back(Integer(static_cast<long>(x)));
    rays.push_back(std::move(v));
  }
  return build_class_grading(rays);
}

inline std::vector<Poly> problem_hypersurfaces(const ProblemFile &p) {
  std::vector<Poly> out;
  for (const auto &h : p.hypersurfaces) {
    Poly g(p.rays.size());
    for (const auto &t : h)
      g.add_term(Monomial(t.exponents), t.coefficient);
    out.push_back(std::move(g));
  }
  return out;
}

inline CayleyRing problem_ring(const ProblemFile &p) {
  return build_cayley_ring(problem_grading(p), problem_hypersurfaces(p));
}

} // namespace torflat

#endif // TORFLAT_PROBLEM_HPP
