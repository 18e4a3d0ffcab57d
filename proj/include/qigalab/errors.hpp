#pragma once

#include <stdexcept>
#include <string>

namespace qigalab {

// Raised when an exhaustive computation would exceed its tractability cap.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input: schemata, knot files, lookup tables, chromosomes.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qigalab
