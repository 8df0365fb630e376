#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wirecomp/box.hpp"
#include "wirecomp/matrix.hpp"

namespace wirecomp {

/// Raised when diagram/system interfaces do not line up; names both sides.
struct BoundaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A wiring diagram: a morphism from a (possibly tensored) domain box to a
/// codomain box, given by three routing matrices:
///   a_f : total_in(domain)  x total_out(domain)   inner outputs -> inner inputs
///   b_f : total_in(domain)  x total_in(codomain)  outer inputs  -> inner inputs
///   c_f : total_out(codomain) x total_out(domain) inner outputs -> outer outputs
///
/// The domain keeps its tensor-factor structure so that hierarchical
/// decompositions and the DSL can address individual sub-boxes.
struct WiringDiagram {
  std::vector<Box> domain_factors;
  Box codomain;
  Matrix a_f;
  Matrix b_f;
  Matrix c_f;

  Box domain() const { return tensor_boxes(domain_factors); }

  /// Validating constructor; throws DimensionError on bad shapes.
  static WiringDiagram make(std::vector<Box> domain_factors, Box codomain,
                            Matrix a_f, Matrix b_f, Matrix c_f);
};

WiringDiagram identity_diagram(const Box& x);

/// Sequential composition "g then f": g : X -> Y, f : Y -> X'. The result
/// routes X directly into X', with the same composite law as the LTIS
/// functor acting on the routing matrices.
WiringDiagram compose_diagrams(const WiringDiagram& g, const WiringDiagram& f);

/// Parallel placement; routing matrices assemble block-diagonally.
WiringDiagram tensor_diagrams(std::span<const WiringDiagram> fs);
WiringDiagram tensor_diagrams(std::initializer_list<WiringDiagram> fs);

/// Shape and (optionally) routing-discipline checks. In strict mode every
/// inner-input row of (a_f b_f) must have at most one nonzero entry: fan-out
/// of a source is fine, fan-in to one inner input is not.
std::vector<std::string> validate(const WiringDiagram& d, bool strict = false);

/// Neutral wire-level view for renderers: one entry per nonzero routing
/// entry, grouped by port blocks when the block is a scaled identity.
struct WireView {
  enum class EndpointKind { OuterInput, OuterOutput, InnerInput, InnerOutput };
  struct Endpoint {
    EndpointKind kind;
    std::size_t factor = 0;  // domain factor index, for inner endpoints
    std::string box;
    std::string port;
    std::size_t dim = 1;
  };
  Endpoint src;
  Endpoint dst;
  double weight = 1.0;  // weight of an identity-scaled block, or the entry
};

std::vector<WireView> enumerate_wires(const WiringDiagram& d);

}  // namespace wirecomp
