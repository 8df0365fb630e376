#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wirecomp/matrix.hpp"

namespace wirecomp {

/// A typed port: a name plus the dimension of the real space it carries.
struct Port {
  std::string name;
  std::size_t dim = 1;

  bool operator==(const Port&) const = default;
};

/// A labeled box: an interface a system can inhabit. Port order is canonical
/// (declaration order).
struct Box {
  std::string name;
  std::vector<Port> inputs;
  std::vector<Port> outputs;

  std::size_t total_in() const;
  std::size_t total_out() const;

  /// Byte offset of the k-th input/output port into the stacked vector.
  std::size_t input_offset(std::size_t port_index) const;
  std::size_t output_offset(std::size_t port_index) const;

  bool operator==(const Box&) const = default;
};

/// Validates port invariants (positive dims, unique names per side).
/// Returns a list of violations; empty means ok.
std::vector<std::string> validate_box(const Box& b);

/// True when the two boxes have the same port dimension structure (names and
/// labels are ignored); this is the compatibility notion used when plugging
/// systems into diagrams and diagrams into each other.
bool same_interface(const Box& a, const Box& b);

/// Parallel placement: ports concatenate in argument order, names prefixed by
/// the source box name to stay unique. The empty tensor is the unit box.
Box tensor_boxes(std::span<const Box> boxes);
Box tensor_boxes(std::initializer_list<Box> boxes);

}  // namespace wirecomp
