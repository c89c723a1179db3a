#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bracketlab/vform.hpp"

namespace blab {

using Element = std::variant<Polynomial, Multivector, Form, VForm>;

/// "scalar", "multivector[2]", "form[1]", "vform[1,1]".
std::string element_kind(const Element& e);
std::string element_to_string(const Element& e);

/// Variables, an optional base/fiber split and named bindings.
struct Workspace {
  Context ctx;
  std::optional<std::pair<std::size_t, std::size_t>> fiber_split;  ///< (base m, fiber r)
  std::vector<std::pair<std::string, Element>> defs;               ///< in definition order

  const Element* find(const std::string& name) const;
  void define(const std::string& name, Element e);
};

/// Grammar, loosest first:
///   expr    := sum ('#' sum)?            form # derivation
///   sum     := product (('+'|'-') product)*
///   wedge   := factor ('^' factor)*      wedge of graded operands
///   product := wedge-free factors joined by '*', '/' integer
///   factor  := '-' factor | primary ('^' integer)?   power of a scalar
///   primary := integer | identifier | d<var> | @<var> | '(' expr ')'
/// Identifiers resolve to a variable first, then a workspace binding, then
/// the basis symbols d<var>. ParseError carries the byte offset.
Element parse_element(const std::string& src, const Workspace& ws);

/// Variables mentioned in the expressions, sorted: identifiers, d<var> and
/// @<var> basis symbols. Names starting with "p_" are left out when
/// `skip_fiber` is set (symbol fiber variables).
std::vector<std::string> infer_variables(const std::vector<std::string>& sources, bool skip_fiber = false);

/// Workspace file: {"version": 1, "vars": [...], "fiber_split": {"base": m, "fiber": r},
/// "defs": {"name": "expression", ...}}. Definitions are parsed in file order.
Workspace load_workspace(const std::string& json_text);
std::string save_workspace(const Workspace& ws);

}  // namespace blab
