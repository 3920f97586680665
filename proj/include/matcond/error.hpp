#pragma once

#include <stdexcept>
#include <string>

namespace matcond {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap, a pivot vanished, or a result
/// overflowed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The input lies outside the domain of the requested matrix function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix does not belong to the structure class it was declared to be in.
class MembershipError : public Error {
 public:
  MembershipError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed input file or command-line value.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace matcond
