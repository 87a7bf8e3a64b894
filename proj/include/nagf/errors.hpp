#pragma once

#include <stdexcept>
#include <string>

namespace nagf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied arguments outside an operation's domain.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Spherical refinement requested too close to θ = 0 or π.
class PoleError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Simulation produced a result that is physically invalid.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class UnitarityError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class AdiabaticityError : public PhysicsError {
 public:
  AdiabaticityError(const std::string& what, double leakage)
      : PhysicsError(what), leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

// Principal N-th root disagrees with the first-loop operator.
class WindingError : public PhysicsError {
 public:
  WindingError(const std::string& what, double mismatch)
      : PhysicsError(what), mismatch_(mismatch) {}
  double mismatch() const { return mismatch_; }

 private:
  double mismatch_;
};

}  // namespace nagf
