#pragma once

#include <stdexcept>
#include <string>

namespace pamlab {

// Parameter outside its admissible range (hard failures in downstream
// constructors; validate_params reports instead of throwing).
using domain_error = std::domain_error;

// Caller misuse: mismatched lengths, bad call ordering.
using usage_error = std::invalid_argument;

// Inputs on a measure-zero degenerate set (e.g. coincident simplex times).
class degenerate_input_error : public std::domain_error {
 public:
  explicit degenerate_input_error(const std::string& what)
      : std::domain_error(what) {}
};

// Requested work exceeds a configured resource bound (K_max, tensor memory).
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A numerical procedure failed to meet its contract (quadrature
// non-convergence, symmetry residue above tolerance, ...).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace pamlab
