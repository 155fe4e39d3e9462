#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lonely {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class OutsidePoint : public Error {
 public:
  using Error::Error;
};

class OutsideSupport : public Error {
 public:
  using Error::Error;
};

class UnsupportedDim : public Error {
 public:
  using Error::Error;
};

class NotDiscrete : public Error {
 public:
  using Error::Error;
};

class NonRational : public Error {
 public:
  using Error::Error;
};

class ZeroDirection : public Error {
 public:
  using Error::Error;
};

class IncompleteStar : public Error {
 public:
  using Error::Error;
};

class NonIntegerFactor : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class OverlapError : public Error {
 public:
  OverlapError(std::size_t first, std::size_t second)
      : Error("tiles " + std::to_string(first) + " and " + std::to_string(second) +
              " have intersecting interiors"),
        first_(first),
        second_(second) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// Rule file does not conform to the schema. `field` is a JSON pointer or a
// "line N" locator.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error("schema error at " + field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace lonely
