#ifndef TORFLAT_TEXT_HPP
#define TORFLAT_TEXT_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"
#include "super.hpp"

namespace torflat {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Parses the canonical rendering "c*v1^e1*...*eta_v" of a graded element.
template <typename Tag>
GradedElement<Tag> parse_graded(std::string_view text, const VariableNames &names,
                                std::string_view odd_prefix) {
  const std::size_t n = names.names.size();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i)
    index.emplace(names.names[i], i);
  auto lookup = [&](std::string_view v) {
    auto it = index.find(v);
    if (it == index.end())
      throw std::invalid_argument("unknown variable '" + std::string(v) + "'");
    return it->second;
  };

  GradedElement<Tag> out(n);
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      compact += ch;
  if (compact == "0")
    return out;
  if (compact.empty())
    throw std::invalid_argument("empty expression");

  std::size_t pos = 0;
  while (pos < compact.size()) {
    int sign = 1;
    if (compact[pos] == '+' || compact[pos] == '-') {
      sign = compact[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw std::invalid_argument("expected '+' or '-' in '" + std::string(text) + "'");
    }
    std::size_t end = compact.find_first_of("+-", pos);
    std::string_view term(compact.data() + pos, (end == std::string::npos ? compact.size() : end) - pos);
    pos = end == std::string::npos ? compact.size() : end;
    if (term.empty())
      throw std::invalid_argument("empty term in '" + std::string(text) + "'");

    Rational coef = sign;
    Monomial mono(n);
    OddSet odd;
    int odd_sign = 1;
    bool vanishes = false; // repeated odd factor
    std::size_t f0 = 0;
    bool first = true;
    while (f0 <= term.size()) {
      std::size_t f1 = term.find('*', f0);
      if (f1 == std::string_view::npos)
        f1 = term.size();
      std::string_view factor = term.substr(f0, f1 - f0);
      if (factor.empty())
        throw std::invalid_argument("empty factor in '" + std::string(term) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor.front()))) {
        if (!first)
          throw std::invalid_argument("coefficient must lead the term '" + std::string(term) + "'");
        coef *= parse_rational(factor);
      } else if (factor.substr(0, odd_prefix.size()) == odd_prefix &&
                 index.count(factor.substr(odd_prefix.size())) &&
                 !index.count(factor)) {
        std::size_t i = lookup(factor.substr(odd_prefix.size()));
        if (odd.contains(i))
          vanishes = true;
        std::size_t above = odd.size() - odd.count_below(i);
        if (above % 2)
          odd_sign = -odd_sign;
        odd = odd.with(i);
      } else {
        std::size_t caret = factor.find('^');
        std::string_view var = factor.substr(0, caret);
        std::uint32_t e = 1;
        if (caret != std::string_view::npos) {
          std::string_view es = factor.substr(caret + 1);
          if (es.empty() || es.find_first_not_of("0123456789") != std::string_view::npos)
            throw std::invalid_argument("bad exponent in '" + std::string(factor) + "'");
          e = static_cast<std::uint32_t>(std::stoul(std::string(es)));
        }
        mono.exps[lookup(var)] += e;
      }
      first = false;
      f0 = f1 + 1;
    }
    if (!vanishes)
      out.add_term(mono, odd, coef * odd_sign);
  }
  return out;
}

} // namespace detail

/// Inverse of render(Poly, names).
inline Poly parse_poly(std::string_view text, const VariableNames &names) {
  auto e = detail::parse_graded<detail::SuperTag>(text, names, "eta_");
  for (const auto &[k, c] : e)
    if (!k.odd.empty())
      throw std::invalid_argument("odd factor in a polynomial");
  return e.even_part();
}

/// Inverse of render(SuperElement, names).
inline SuperElement parse_super(std::string_view text, const VariableNames &names) {
  return detail::parse_graded<detail::SuperTag>(text, names, "eta_");
}

} // namespace torflat

#endif // TORFLAT_TEXT_HPP
