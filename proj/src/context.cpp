#include "bracketlab/context.hpp"

#include <set>

#include "bracketlab/errors.hpp"
#include "bracketlab/monomial.hpp"

namespace blab {

VariableContext::VariableContext(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) {
    throw DomainError("at most " + std::to_string(kMaxVars) + " variables are supported");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DomainError("empty variable name");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name '" + n + "'");
  }
}

int VariableContext::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Context make_context(std::vector<std::string> names) {
  return std::make_shared<const VariableContext>(std::move(names));
}

bool same_context(const Context& a, const Context& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->names() == b->names();
}

void require_same_context(const Context& a, const Context& b, const char* op) {
  if (!same_context(a, b)) throw ContextError(std::string(op) + ": operands use different variable contexts");
}

}  // namespace blab
