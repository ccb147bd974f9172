#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax or validation failure with a 1-based source position.
struct ParseError : Error {
  ParseError(const std::string& message, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Fuzzy-set operation applied across distinct sort domains.
struct DomainMismatchError : Error {
  using Error::Error;
};

// Interpretation-space enumeration would exceed the configured cap.
struct SpaceCapError : Error {
  SpaceCapError(std::size_t required, std::size_t cap)
      : Error("interpretation space needs " + std::to_string(required) +
              " entries, cap is " + std::to_string(cap)),
        required(required),
        cap(cap) {}
  std::size_t required;
  std::size_t cap;
};

struct UnknownAtomError : Error {
  explicit UnknownAtomError(const std::string& name)
      : Error("unknown atom '" + name + "'") {}
};

}  // namespace pgl
