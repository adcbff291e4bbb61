#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace divfan {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, unknown names, unparsable numbers.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but violates a mathematical requirement.
/// Carries a machine-readable witness.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, nlohmann::json witness = nullptr)
      : Error(what), witness_(std::move(witness)) {}
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  nlohmann::json witness_;
};

}  // namespace divfan
