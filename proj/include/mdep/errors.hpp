#pragma once

#include <stdexcept>
#include <string>

namespace mdep {

// Input outside the mathematical domain of an operation (d = 0, zero tuple
// entries, repeated entries, ...). The CLI maps this to exit code 3.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Value does not fit the supported 64-bit range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace mdep
