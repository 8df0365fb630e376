#include "wirecomp/dot_export.hpp"

#include <sstream>

namespace wirecomp {

namespace {

std::string edge_label(const WireView& w) {
  std::ostringstream os;
  os << w.src.port << " -> " << w.dst.port << " (" << w.src.dim << ")";
  if (w.weight != 1.0) os << " x" << w.weight;
  return os.str();
}

void write_edges(std::ostringstream& os, const WiringDiagram& d,
                 const std::vector<std::string>& factor_ids,
                 const std::string& prefix) {
  using K = WireView::EndpointKind;
  auto node_id = [&](const WireView::Endpoint& e) -> std::string {
    switch (e.kind) {
      case K::InnerInput:
      case K::InnerOutput:
        return factor_ids[e.factor];
      case K::OuterInput:
        return prefix + "_in_" + e.port;
      case K::OuterOutput:
        return prefix + "_out_" + e.port;
    }
    return "?";
  };
  for (const auto& w : enumerate_wires(d)) {
    os << "  " << node_id(w.src) << " -> " << node_id(w.dst) << " [label=\""
       << edge_label(w) << "\"];\n";
  }
}

void write_outer_ports(std::ostringstream& os, const Box& codomain,
                       const std::string& prefix) {
  for (const auto& p : codomain.inputs) {
    os << "  " << prefix << "_in_" << p.name
       << " [shape=plaintext, label=\"" << p.name << "\"];\n";
  }
  for (const auto& p : codomain.outputs) {
    os << "  " << prefix << "_out_" << p.name
       << " [shape=plaintext, label=\"" << p.name << "\"];\n";
  }
}

// Emits the cluster for a decomposition node; returns the id of an anchor
// node inside it so parent-level edges have somewhere to land.
std::string write_tree(std::ostringstream& os, const Decomposition& t,
                       int& counter, int indent) {
  const std::string pad(indent, ' ');
  const int my_id = counter++;
  const std::string prefix = "c" + std::to_string(my_id);
  os << pad << "subgraph cluster_" << prefix << " {\n";
  os << pad << "  label=\"" << t.root().name << "\";\n";

  std::vector<std::string> factor_ids;
  for (const auto& child : t.children) {
    if (const Box* leaf = std::get_if<Box>(&child)) {
      const std::string id = "n" + std::to_string(counter++);
      os << pad << "  " << id << " [label=\"" << leaf->name << "\"];\n";
      factor_ids.push_back(id);
    } else {
      factor_ids.push_back(
          write_tree(os, std::get<Decomposition>(child), counter, indent + 2));
    }
  }
  // Boundary ports live inside the cluster so every level's wires resolve.
  for (const auto& p : t.root().inputs) {
    os << pad << "  " << prefix << "_in_" << p.name
       << " [shape=plaintext, label=\"" << p.name << "\"];\n";
  }
  for (const auto& p : t.root().outputs) {
    os << pad << "  " << prefix << "_out_" << p.name
       << " [shape=plaintext, label=\"" << p.name << "\"];\n";
  }
  std::ostringstream edges;
  write_edges(edges, t.node, factor_ids, prefix);
  os << edges.str();
  os << pad << "}\n";
  // Anchor: the first inner node of this cluster (clusters always have one).
  return factor_ids.empty() ? prefix : factor_ids.front();
}

}  // namespace

std::string to_dot(const WiringDiagram& d) {
  std::ostringstream os;
  os << "digraph wiring {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";
  os << "  subgraph cluster_0 {\n";
  os << "    label=\"" << d.codomain.name << "\";\n";
  std::vector<std::string> factor_ids;
  for (std::size_t i = 0; i < d.domain_factors.size(); ++i) {
    const std::string id = "n" + std::to_string(i);
    os << "    " << id << " [label=\"" << d.domain_factors[i].name << "\"];\n";
    factor_ids.push_back(id);
  }
  os << "  }\n";
  write_outer_ports(os, d.codomain, "p");
  write_edges(os, d, factor_ids, "p");
  os << "}\n";
  return os.str();
}

std::string to_dot(const Decomposition& t) {
  std::ostringstream os;
  os << "digraph decomposition {\n";
  os << "  rankdir=LR;\n";
  os << "  compound=true;\n";
  os << "  node [shape=box];\n";
  int counter = 1;
  write_tree(os, t, counter, 2);
  os << "}\n";
  return os.str();
}

}  // namespace wirecomp
