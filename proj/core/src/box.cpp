#include "wirecomp/box.hpp"

#include <unordered_set>

namespace wirecomp {

std::size_t Box::total_in() const {
  std::size_t n = 0;
  for (const auto& p : inputs) n += p.dim;
  return n;
}

std::size_t Box::total_out() const {
  std::size_t n = 0;
  for (const auto& p : outputs) n += p.dim;
  return n;
}

std::size_t Box::input_offset(std::size_t port_index) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < port_index; ++i) off += inputs[i].dim;
  return off;
}

std::size_t Box::output_offset(std::size_t port_index) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < port_index; ++i) off += outputs[i].dim;
  return off;
}

std::vector<std::string> validate_box(const Box& b) {
  std::vector<std::string> violations;
  auto check_side = [&](const std::vector<Port>& ports, const char* side) {
    std::unordered_set<std::string> seen;
    for (const auto& p : ports) {
      if (p.dim < 1) {
        violations.push_back("box '" + b.name + "': " + side + " port '" +
                             p.name + "' has dimension 0");
      }
      if (!seen.insert(p.name).second) {
        violations.push_back("box '" + b.name + "': duplicate " + side +
                             " port name '" + p.name + "'");
      }
    }
  };
  check_side(b.inputs, "input");
  check_side(b.outputs, "output");
  return violations;
}

bool same_interface(const Box& a, const Box& b) {
  auto dims_match = [](const std::vector<Port>& x, const std::vector<Port>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].dim != y[i].dim) return false;
    return true;
  };
  return dims_match(a.inputs, b.inputs) && dims_match(a.outputs, b.outputs);
}

Box tensor_boxes(std::span<const Box> boxes) {
  Box out;
  if (boxes.size() == 1) return boxes.front();
  for (const auto& b : boxes) {
    if (!out.name.empty()) out.name += "*";
    out.name += b.name;
    for (const auto& p : b.inputs) out.inputs.push_back({b.name + "." + p.name, p.dim});
    for (const auto& p : b.outputs) out.outputs.push_back({b.name + "." + p.name, p.dim});
  }
  return out;
}

Box tensor_boxes(std::initializer_list<Box> boxes) {
  return tensor_boxes(std::span<const Box>(boxes.begin(), boxes.size()));
}

}  // namespace wirecomp
