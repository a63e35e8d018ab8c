#pragma once

#include <stdexcept>
#include <string>

namespace dedekind {

// Request exceeds what this build materializes (arity above the one-word
// limit, or a work estimate above the configured budget).
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

// Budget refusal; carries the tuple count that was requested so callers can
// report it and decide whether to override.
class BudgetError : public ResourceLimitError {
 public:
  BudgetError(const std::string& what, unsigned long long tuples)
      : ResourceLimitError(what), tuples_(tuples) {}
  unsigned long long tuples() const noexcept { return tuples_; }

 private:
  unsigned long long tuples_;
};

}  // namespace dedekind
