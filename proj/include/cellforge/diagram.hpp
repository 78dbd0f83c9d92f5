#pragma once

#include <map>
#include <memory>
#include <vector>

#include "cellforge/morphism.hpp"

namespace cellforge {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression tree over named generators, identities and duality maps.
/// Text form: name | id("+-") | ev("+-") | coev("-+") | comp(E,...) |
/// tens(E,...) | dag(E) | rot(E) | add(E,...) | smul(<qexpr>, E).
/// comp(f1,...,fn) applies fn first (usual function order).
struct DiagramExpr {
  enum class Kind { Name, Id, Ev, Coev, Comp, Tens, Dag, Rot, Add, Smul };
  Kind kind;
  std::string text;                         // Name: generator; Id/Ev/Coev: sign string
  QExprPtr scalar;                          // Smul
  std::vector<std::shared_ptr<DiagramExpr>> args;
};
using DiagramPtr = std::shared_ptr<DiagramExpr>;

DiagramPtr diagram_parse(const std::string& text);
std::string diagram_to_string(const DiagramPtr& d);

/// Recursive evaluation; type errors name the failing subterm.
Morphism eval_diagram(const DiagramPtr& d, const OrientedGraph& g,
                      const std::map<std::string, Morphism>& bindings);

/// One relation: lhs = rhs inside a common Hom space.
struct RelationEncoding {
  std::string name;
  DiagramPtr lhs, rhs;
};

/// Parses a .diagram file: lines "name: ...", "lhs: ...", "rhs: ..."
/// ('#' starts a comment).
RelationEncoding load_relation_file(const std::string& path);
RelationEncoding parse_relation_text(const std::string& text);

}  // namespace cellforge
