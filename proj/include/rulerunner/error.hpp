#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rulerunner {

/// Malformed formula or trace text. `position()` is a 0-based character
/// offset for inline text, or a 1-based line number for trace files.
class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A formula that cannot be represented in the negation-normal grammar, or an
/// operation applied to an operator it does not support.
class formula_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// API misuse: stepping a finished monitor, empty traces, bad parameters.
class usage_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A broken engine invariant (no rule or several rules matched, missing
/// operand evaluation). Never expected on a well-formed rule system.
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace rulerunner
