#pragma once

#include <memory>
#include <string>
#include <vector>

namespace blab {

/// Ordered list of variable names. Index i corresponds to the basis
/// derivation @x_i and the basis form dx_i.
class VariableContext {
 public:
  explicit VariableContext(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of `name`, or -1.
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
};

using Context = std::shared_ptr<const VariableContext>;

Context make_context(std::vector<std::string> names);

/// Same object or same ordered names.
bool same_context(const Context& a, const Context& b);

/// Throws ContextError unless `same_context(a, b)`.
void require_same_context(const Context& a, const Context& b, const char* op);

}  // namespace blab
