#pragma once

#include <stdexcept>

namespace grp {

// Raised when a computation produces non-finite values or cannot meet its
// numerical contract (as opposed to std::invalid_argument for bad inputs).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace grp
