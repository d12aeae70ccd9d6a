#pragma once

#include <stdexcept>
#include <string>

namespace majorana {

// Numerical invariant violated at runtime: Schur iteration failed to converge,
// canonical-form residual out of bounds, determinant cross-check mismatch.
// Inputs that are wrong by construction throw std::invalid_argument instead.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced no usable output: no mode below the energy tolerance,
// every sweep point clamped away, an empty grid.
struct empty_result_error : std::runtime_error {
  explicit empty_result_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace majorana
