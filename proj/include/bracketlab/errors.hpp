#pragma once

#include <stdexcept>
#include <string>

namespace blab {

/// Operands live over different variable contexts.
struct ContextError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside an operation's domain (bad index, wrong degree, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A structure (Poisson bivector, integrable N, flat connection) failed the
/// verification an operation requires.
struct UnverifiedError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Parse failure with a byte offset into the source text.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

}  // namespace blab
