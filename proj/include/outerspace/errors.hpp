#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace outerspace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Consecutive edges of a path are not incident.
class MalformedPathError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (open path where a loop is
/// required, empty edge subset, floor too large, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A move would identify two edges carrying a nontrivial loop, i.e. the map
/// is not a homotopy equivalence.
class RankCollapseError : public Error {
 public:
  using Error::Error;
};

/// Markings or automorphisms fail to be homotopy inverse to each other.
class MarkingIntegrityError : public Error {
 public:
  using Error::Error;
};

class UndefinedDerivativeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace outerspace
