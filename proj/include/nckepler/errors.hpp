#pragma once

#include <stdexcept>
#include <string>

namespace nckepler {

// Point outside a chart or field domain. `coordinate` names the offender.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string coordinate, const std::string& what)
      : std::domain_error(what), coordinate_(std::move(coordinate)) {}
  const std::string& coordinate() const { return coordinate_; }

 private:
  std::string coordinate_;
};

// Deformed radius vanished.
class SingularConfiguration : public DomainError {
 public:
  explicit SingularConfiguration(const std::string& what) : DomainError("Y", what) {}
};

class InvalidDeformation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Implicit-midpoint fixed point did not converge.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A derived field was asked for more derivative levels than its inputs carry.
class DerivativeOrderExhausted : public std::logic_error {
 public:
  DerivativeOrderExhausted() : std::logic_error("derivative order exhausted for derived field") {}
};

}  // namespace nckepler
