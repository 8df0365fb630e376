#pragma once

#include <string>

#include "wirecomp/diagram.hpp"
#include "wirecomp/hierarchy.hpp"

namespace wirecomp {

/// Graphviz rendering of a wiring diagram: one cluster for the codomain box
/// enclosing a node per domain factor; outer ports become boundary nodes;
/// edges are labeled with port names and dimensions.
std::string to_dot(const WiringDiagram& d);

/// Nested clusters mirror the decomposition tree; edges come from each
/// node's wiring at its own level.
std::string to_dot(const Decomposition& t);

}  // namespace wirecomp
