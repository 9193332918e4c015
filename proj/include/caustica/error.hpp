#pragma once

#include <stdexcept>
#include <string>

namespace caustica {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected (a, b) pair. The reason distinguishes the degenerate cases the
/// geometry refuses to approximate.
class InvalidParaboloid : public Error {
 public:
  enum class Reason { non_finite, non_elliptic, equal_curvatures, unordered };

  InvalidParaboloid(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A radicand of a real parametrization is negative beyond tolerance.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class NotOnSurface : public Error {
 public:
  using Error::Error;
};

class DegenerateQuery : public Error {
 public:
  using Error::Error;
};

/// Root isolation could not certify its answer; the input sits in the
/// near-degenerate band.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class Unstable : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace caustica
