#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "wirecomp/diagram.hpp"
#include "wirecomp/system.hpp"

namespace wirecomp {

/// A nested decomposition of a box: the node diagram implements the root in
/// terms of its domain factors, and each factor is either a leaf box or is
/// itself decomposed. Finite trees only; no sharing between parents.
struct Decomposition {
  WiringDiagram node;
  /// One child per tensor factor of node.domain, in order.
  std::vector<std::variant<Box, Decomposition>> children;

  const Box& root() const { return node.codomain; }

  /// Checks arity and that each child's box matches the corresponding
  /// domain factor. Throws BoundaryError on violation.
  static Decomposition make(WiringDiagram node,
                            std::vector<std::variant<Box, Decomposition>> children);

  /// Convenience: every factor a leaf.
  static Decomposition leaf_tree(WiringDiagram node);
};

/// Depth-first left-to-right leaf boxes. This order is the contract for
/// matching leaf systems in semantics_of.
std::vector<Box> leaves(const Decomposition& t);

/// Erases the intermediate levels: one diagram from the tensor of all leaf
/// boxes to the root, computed as compose(tensor of child flattenings, node)
/// with identity diagrams at the leaves.
WiringDiagram flatten(const Decomposition& t);

/// apply_diagram(flatten(t), laxator(leaf_systems)).
LinSystem semantics_of(const Decomposition& t,
                       std::span<const LinSystem> leaf_systems);

}  // namespace wirecomp
