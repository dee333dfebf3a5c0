#ifndef TORFLAT_ERRORS_HPP
#define TORFLAT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torflat {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The class group has torsion: some elementary divisor of the ray matrix exceeds 1.
class TorsionClassGroup : public Error {
public:
  using Error::Error;
};

class UnboundedPolytope : public Error {
public:
  using Error::Error;
};

class RaysDoNotSpan : public Error {
public:
  using Error::Error;
};

class InhomogeneousHypersurface : public Error {
public:
  InhomogeneousHypersurface(std::size_t index, const std::string &first,
                            const std::string &second)
      : Error("hypersurface " + std::to_string(index + 1) +
              " is not charge-homogeneous: found charges " + first + " and " +
              second),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class InhomogeneousCohDegree : public Error {
public:
  using Error::Error;
};

class NotCalabiYau : public Error {
public:
  using Error::Error;
};

class NonFiniteQuotient : public Error {
public:
  using Error::Error;
};

class NotCharge0 : public Error {
public:
  using Error::Error;
};

class BasisIncomplete : public Error {
public:
  BasisIncomplete(long long weight, const std::string &detail)
      : Error("graded piece of weight " + std::to_string(weight) +
              " is not spanned by basis and Jacobian ideal: " + detail),
        weight_(weight) {}

  long long weight() const noexcept { return weight_; }

private:
  long long weight_;
};

class MissingTableEntry : public Error {
public:
  using Error::Error;
};

/// Input text could not be parsed. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string &message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace torflat

#endif // TORFLAT_ERRORS_HPP
