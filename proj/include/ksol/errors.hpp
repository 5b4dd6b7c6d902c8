#pragma once

#include <stdexcept>
#include <string>

namespace ksol {

// Malformed input document (CLI exit 2).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed but mathematically inadmissible instance (CLI exit 3).
struct AdmissibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root not bracketed, evaluation outside the tabulated range, non-finite results (CLI exit 4).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ksol
