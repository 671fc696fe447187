#pragma once

#include <stdexcept>
#include <string>

namespace kopa {

// Bad input: parameter invariant violated, malformed config, unsupported
// configuration (e.g. theta != 0 for the steady-state polynomial).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Physically meaningful failure: unstable operating point, multistability,
// singular operating point, no transduction.
class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& what) : std::runtime_error(what) {}
};

// An independent cross-check disagreed beyond tolerance.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kopa
