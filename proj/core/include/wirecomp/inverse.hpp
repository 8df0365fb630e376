#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wirecomp/system.hpp"

namespace wirecomp {

/// How a composite state vector splits into component states, in order.
struct StatePartition {
  struct Part {
    std::string name;
    std::size_t dim = 0;
  };
  std::vector<Part> parts;

  std::size_t total() const;
};

/// Result of a consistency check or block recovery. `determined` holds
/// blocks the composite pins down; `product_constrained` holds products of
/// free blocks that the composite determines only jointly; `free_blocks`
/// names component matrices left unconstrained beyond those products.
struct MatchReport {
  bool pass = false;
  struct BlockDiff {
    std::string name;
    double max_diff = 0.0;
  };
  std::vector<BlockDiff> diffs;
  struct NamedBlock {
    std::string name;
    Matrix value;
  };
  std::vector<NamedBlock> determined;
  std::vector<NamedBlock> product_constrained;
  std::vector<std::string> free_blocks;
  std::vector<std::string> violations;
};

/// Membership test for the pre-image: composes the candidates through the
/// diagram and compares (A, B, C) with the target entrywise.
MatchReport check_composition(const WiringDiagram& d,
                              std::span<const LinSystem> candidates,
                              const LinSystem& target, double tol = kDefaultTol);

struct RecoverOptions {
  double tol = kDefaultTol;  // tolerance for must-be-zero structure
  /// Normalization for splitting the product B_D*C_C. Defaults to the
  /// identity on the controller state, which makes the controller output
  /// equal to its state. If a non-identity readout is supplied, B_D stays
  /// product-constrained.
  std::optional<Matrix> controller_readout;
};

/// Closed-form block extraction for the sensor -> controller -> dynamics
/// feedback loop (three parts, in that order; composite box with two inputs
/// (d, e) and one output). Verifies the composite has the loop's zero
/// structure, then reads off diagonal blocks, the readout block C_D, the
/// external-input columns, and the coupling products.
MatchReport recover_loop_blocks(const LinSystem& composite,
                                const StatePartition& partition,
                                const RecoverOptions& opts = {});

}  // namespace wirecomp
