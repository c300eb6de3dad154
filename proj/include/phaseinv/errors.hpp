#pragma once

#include <stdexcept>
#include <string>

namespace phaseinv {

// Argument outside the mathematical domain of an operation (x <= 0, h < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A special-function table that cannot be represented in double precision.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, int order, double argument)
      : std::overflow_error(what), order_(order), argument_(argument) {}

  int order() const { return order_; }
  double argument() const { return argument_; }

 private:
  int order_;
  double argument_;
};

// Propagation or search failure (non-finite state, degenerate data, ...).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid run configuration; the message lists every violation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phaseinv
