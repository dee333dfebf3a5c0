#ifndef TORFLAT_RATIONAL_HPP
#define TORFLAT_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "errors.hpp"

namespace torflat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const Rational &q) { return q.get_str(); }
inline std::string to_string(const Integer &z) { return z.get_str(); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator. The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  if (text.empty())
    throw std::invalid_argument("empty rational");
  auto valid_int = [](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
      ++i;
    if (i == s.size())
      return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_int(num, true) ||
      (slash != std::string_view::npos && !valid_int(den, false)))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+')
    n.erase(0, 1);
  Rational q;
  q.get_num() = Integer(n);
  q.get_den() = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den));
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

/// Converts a bignum to int64, throwing if it does not fit.
inline std::int64_t to_int64(const Integer &z) {
  if (!z.fits_slong_p())
    throw std::overflow_error("integer " + z.get_str() + " exceeds 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

} // namespace torflat

#endif // TORFLAT_RATIONAL_HPP
