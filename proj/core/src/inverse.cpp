#include "wirecomp/inverse.hpp"

#include <cmath>

namespace wirecomp {

std::size_t StatePartition::total() const {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.dim;
  return n;
}

MatchReport check_composition(const WiringDiagram& d,
                              std::span<const LinSystem> candidates,
                              const LinSystem& target, double tol) {
  MatchReport rep;
  const LinSystem stacked = laxator(candidates);
  if (!same_interface(stacked.box, d.domain())) {
    throw BoundaryError(
        "tensor of candidate boxes does not match the diagram domain of '" +
        d.codomain.name + "'");
  }
  if (!same_interface(target.box, d.codomain)) {
    throw BoundaryError("target box '" + target.box.name +
                        "' does not match the diagram codomain '" +
                        d.codomain.name + "'");
  }
  const LinSystem composed = apply_diagram(d, stacked);
  if (composed.state_dim() != target.state_dim()) {
    rep.violations.push_back(
        "state dimension mismatch: composite has " +
        std::to_string(composed.state_dim()) + ", target has " +
        std::to_string(target.state_dim()));
    rep.pass = false;
    return rep;
  }
  rep.pass = true;
  auto compare = [&](const char* name, const Matrix& got, const Matrix& want) {
    const ApproxReport r = approx_eq(got, want, tol);
    rep.diffs.push_back({name, r.max_diff});
    if (!r.ok) rep.pass = false;
  };
  compare("A", composed.a, target.a);
  compare("B", composed.b, target.b);
  compare("C", composed.c, target.c);
  return rep;
}

namespace {

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      v = std::max(v, std::abs(m(i, j)));
  return v;
}

}  // namespace

MatchReport recover_loop_blocks(const LinSystem& composite,
                                const StatePartition& partition,
                                const RecoverOptions& opts) {
  MatchReport rep;
  if (partition.parts.size() != 3) {
    throw BoundaryError("loop recovery needs a 3-part partition "
                        "(sensor, controller, dynamics), got " +
                        std::to_string(partition.parts.size()) + " parts");
  }
  if (partition.total() != composite.state_dim()) {
    throw DimensionError("partition sums to " +
                         std::to_string(partition.total()) +
                         " but composite state dim is " +
                         std::to_string(composite.state_dim()));
  }
  if (composite.box.inputs.size() != 2 || composite.box.outputs.size() != 1) {
    throw BoundaryError("loop recovery expects a composite box with two input "
                        "ports (d, e) and one output port; box '" +
                        composite.box.name + "' has " +
                        std::to_string(composite.box.inputs.size()) +
                        " inputs and " +
                        std::to_string(composite.box.outputs.size()) +
                        " outputs");
  }

  const std::string& L = partition.parts[0].name;
  const std::string& C = partition.parts[1].name;
  const std::string& D = partition.parts[2].name;
  const std::size_t nL = partition.parts[0].dim;
  const std::size_t nC = partition.parts[1].dim;
  const std::size_t nD = partition.parts[2].dim;
  const std::size_t oL = 0, oC = nL, oD = nL + nC, n = nL + nC + nD;
  const std::size_t pd = composite.box.inputs[0].dim;
  const std::size_t pe = composite.box.inputs[1].dim;

  auto ablock = [&](std::size_t r0, std::size_t nr, std::size_t c0,
                    std::size_t nc) {
    return submatrix(composite.a, r0, r0 + nr, c0, c0 + nc);
  };

  rep.pass = true;
  auto require_zero = [&](const Matrix& block, const std::string& what) {
    const double v = max_abs(block);
    rep.diffs.push_back({what, v});
    if (v > opts.tol) {
      rep.pass = false;
      rep.violations.push_back("no loop-shaped decomposition exists: " + what +
                               " must be zero, max |entry| = " +
                               std::to_string(v));
    }
  };

  // Zero structure of the sensor -> controller -> dynamics loop.
  require_zero(ablock(oL, nL, oC, nC), "A[" + L + "," + C + "]");
  require_zero(ablock(oC, nC, oD, nD), "A[" + C + "," + D + "]");
  require_zero(ablock(oD, nD, oL, nL), "A[" + D + "," + L + "]");
  require_zero(submatrix(composite.c, 0, composite.c.rows(), oL, oL + nL),
               "C[" + L + "]");
  require_zero(submatrix(composite.c, 0, composite.c.rows(), oC, oC + nC),
               "C[" + C + "]");
  require_zero(submatrix(composite.b, oD, n, 0, pd + pe), "B[" + D + "]");
  require_zero(submatrix(composite.b, oL, oL + nL, 0, pd),
               "B[" + L + ",d]");
  require_zero(submatrix(composite.b, oC, oC + nC, pd, pd + pe),
               "B[" + C + ",e]");

  auto determined = [&](const std::string& name, Matrix value) {
    rep.determined.push_back({name, std::move(value)});
  };

  determined("A_" + L, ablock(oL, nL, oL, nL));
  determined("A_" + C, ablock(oC, nC, oC, nC));
  determined("A_" + D, ablock(oD, nD, oD, nD));
  determined("C_" + D, submatrix(composite.c, 0, composite.c.rows(), oD, n));
  determined("B_" + L + ".e", submatrix(composite.b, oL, oL + nL, pd, pd + pe));
  determined("B_" + C + ".d", submatrix(composite.b, oC, oC + nC, 0, pd));

  const Matrix coupling_ld = ablock(oL, nL, oD, nD);  // B_L.s * C_D
  const Matrix coupling_cl = ablock(oC, nC, oL, nL);  // B_C.s' * C_L
  const Matrix coupling_dc = ablock(oD, nD, oC, nC);  // B_D * C_C

  rep.product_constrained.push_back({"B_" + L + ".s*C_" + D, coupling_ld});
  rep.product_constrained.push_back({"B_" + C + ".s'*C_" + L, coupling_cl});
  rep.free_blocks = {"B_" + L + ".s", "C_" + L, "B_" + C + ".s'"};

  const Matrix cc = opts.controller_readout.value_or(Matrix::identity(nC));
  const bool cc_is_identity =
      cc.rows() == nC && cc.cols() == nC &&
      approx_eq(cc, Matrix::identity(nC), 0.0).ok;
  if (cc_is_identity) {
    // Controller output equals its state; the product splits exactly.
    determined("C_" + C, cc);
    determined("B_" + D, coupling_dc);
  } else {
    rep.product_constrained.push_back({"B_" + D + "*C_" + C, coupling_dc});
    rep.free_blocks.push_back("B_" + D);
    rep.free_blocks.push_back("C_" + C);
  }
  return rep;
}

}  // namespace wirecomp
