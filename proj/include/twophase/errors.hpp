#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twophase {

/// Invalid argument or configuration value.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A Fock-space truncation could not satisfy its tolerance.
///
/// `required_dim` carries the dimension estimate needed to meet the tail
/// tolerance when one is known (0 otherwise). `scalar` names the quantity
/// that failed to converge in dimension-doubling loops.
class TruncationError : public std::runtime_error {
public:
  TruncationError(const std::string& what, std::size_t required_dim = 0, std::string scalar = {})
      : std::runtime_error(what), required_dim_(required_dim), scalar_(std::move(scalar)) {}

  std::size_t required_dim() const noexcept { return required_dim_; }
  const std::string& scalar() const noexcept { return scalar_; }

private:
  std::size_t required_dim_;
  std::string scalar_;
};

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The QFIM is singular (det Q at or below the degeneracy threshold).
class DegenerateModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Information matrices violated a structural property of the model
/// (e.g. dependence on the second encoder phase).
class ModelStructureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace twophase
