#pragma once

#include <stdexcept>
#include <string>

namespace favsched {

// Job or machine index outside the instance.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An instance, job or symmetric instance violates the model invariants.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Algorithm configuration out of range (gamma <= 1, c < 1, estimate <= 0).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Generator parameters outside the construction's admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An online algorithm returned a machine that does not exist.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The exact oracle hit its node budget. Never silently approximated.
class OracleInexact : public std::runtime_error {
 public:
  explicit OracleInexact(const std::string& what, long long nodes)
      : std::runtime_error(what), nodes_(nodes) {}
  long long nodes() const noexcept { return nodes_; }

 private:
  long long nodes_;
};

}  // namespace favsched
