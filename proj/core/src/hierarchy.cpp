#include "wirecomp/hierarchy.hpp"

#include <string>

namespace wirecomp {

Decomposition Decomposition::make(
    WiringDiagram node, std::vector<std::variant<Box, Decomposition>> children) {
  if (children.size() != node.domain_factors.size()) {
    throw BoundaryError("decomposition of '" + node.codomain.name + "' has " +
                        std::to_string(children.size()) + " children but " +
                        std::to_string(node.domain_factors.size()) +
                        " domain factors");
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    const Box& expected = node.domain_factors[i];
    const Box& got = std::holds_alternative<Box>(children[i])
                         ? std::get<Box>(children[i])
                         : std::get<Decomposition>(children[i]).root();
    if (!same_interface(expected, got)) {
      throw BoundaryError("child " + std::to_string(i) + " box '" + got.name +
                          "' does not match domain factor '" + expected.name +
                          "'");
    }
  }
  return Decomposition{std::move(node), std::move(children)};
}

Decomposition Decomposition::leaf_tree(WiringDiagram node) {
  std::vector<std::variant<Box, Decomposition>> children(
      node.domain_factors.begin(), node.domain_factors.end());
  return Decomposition{std::move(node), std::move(children)};
}

std::vector<Box> leaves(const Decomposition& t) {
  std::vector<Box> out;
  for (const auto& child : t.children) {
    if (const Box* b = std::get_if<Box>(&child)) {
      out.push_back(*b);
    } else {
      auto sub = leaves(std::get<Decomposition>(child));
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

WiringDiagram flatten(const Decomposition& t) {
  std::vector<WiringDiagram> parts;
  for (const auto& child : t.children) {
    if (const Box* b = std::get_if<Box>(&child)) {
      parts.push_back(identity_diagram(*b));
    } else {
      parts.push_back(flatten(std::get<Decomposition>(child)));
    }
  }
  return compose_diagrams(tensor_diagrams(parts), t.node);
}

LinSystem semantics_of(const Decomposition& t,
                       std::span<const LinSystem> leaf_systems) {
  const auto leaf_boxes = leaves(t);
  if (leaf_boxes.size() != leaf_systems.size()) {
    throw BoundaryError("expected " + std::to_string(leaf_boxes.size()) +
                        " leaf systems, got " +
                        std::to_string(leaf_systems.size()));
  }
  for (std::size_t i = 0; i < leaf_boxes.size(); ++i) {
    if (!same_interface(leaf_boxes[i], leaf_systems[i].box)) {
      throw BoundaryError("leaf system " + std::to_string(i) + " on box '" +
                          leaf_systems[i].box.name + "' does not match leaf '" +
                          leaf_boxes[i].name + "'");
    }
  }
  return apply_diagram(flatten(t), laxator(leaf_systems));
}

}  // namespace wirecomp
