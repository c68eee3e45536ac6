#pragma once

#include <stdexcept>
#include <string>

namespace qhs {

// Bad index, malformed group spec, or an argument outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Experiment configuration rejected during validation. `field` names the
// offending key when there is one.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object failed one of its own invariants (norm drift, a
// non-subgroup where a subgroup was promised, ...).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IntegrityError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace qhs
