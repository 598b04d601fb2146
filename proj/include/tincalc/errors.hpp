#pragma once

#include <stdexcept>
#include <string>

namespace tincalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

class VerticalEdge : public Error {
 public:
  using Error::Error;
};

class ParallelLines : public Error {
 public:
  using Error::Error;
};

class NotConvex : public Error {
 public:
  using Error::Error;
};

/// Input violates the general-position contract (touching edges, vertex on
/// an interior edge, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A prime divides some denominator of the computation; the prime must be
/// dropped from the basket.
class BadPrime : public Error {
 public:
  BadPrime(std::size_t prime_id, const std::string& what)
      : Error(what), prime_id_(prime_id) {}
  std::size_t prime_id() const { return prime_id_; }

 private:
  std::size_t prime_id_;
};

class InsufficientPrimes : public Error {
 public:
  using Error::Error;
};

}  // namespace tincalc
