#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plumbcap {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Input violates a structural invariant (unknown id, not a tree, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

class NoAdmissibleRoot : public Error {
public:
  using Error::Error;
};

class NotDefinite : public Error {
public:
  using Error::Error;
};

class NonUniqueSpin : public Error {
public:
  using Error::Error;
};

} // namespace plumbcap
