#pragma once

#include <stdexcept>
#include <string>

namespace hvrep {

// Problem with the input itself: wrong shape, malformed data, a value outside
// the supported class of inputs.  The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// The input was acceptable but a computation could not reach the requested
// accuracy: divergent iteration, vanishing denominator, residual above
// tolerance.  The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hvrep
