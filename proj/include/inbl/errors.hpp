#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace inbl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No clock with a nonzero superposition amplitude in [first, last].
class MaxWaitExceeded : public Error {
 public:
  MaxWaitExceeded(std::uint64_t first, std::uint64_t last)
      : Error("no live clock in [" + std::to_string(first) + ", " + std::to_string(last) + "]"),
        first_clock(first),
        last_clock(last) {}
  std::uint64_t first_clock;
  std::uint64_t last_clock;
};

class DeadClock : public Error {
 public:
  explicit DeadClock(std::uint64_t t)
      : Error("superposition amplitude is zero at clock " + std::to_string(t)), clock(t) {}
  std::uint64_t clock;
};

class IllegalClass : public Error {
 public:
  using Error::Error;
};

class OracleLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NameAbsent : public Error {
 public:
  using Error::Error;
};

class NumberAbsent : public Error {
 public:
  using Error::Error;
};

class NotBijective : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  int line;
  int column;
};

}  // namespace inbl
