#pragma once

#include <stdexcept>
#include <string>

namespace fxr {

// Hard failures are exceptions. Per-line parse outcomes on the ingest path
// are status codes instead (every line must be counted, never thrown away).

class UnknownPairError : public std::runtime_error {
 public:
  explicit UnknownPairError(const std::string& symbol)
      : std::runtime_error("unknown currency pair: " + symbol) {}
};

class UnknownYearError : public std::runtime_error {
 public:
  explicit UnknownYearError(int year)
      : std::runtime_error("no spread-group thresholds registered for year " +
                           std::to_string(year)) {}
};

class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fxr
