#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wirecomp/box.hpp"
#include "wirecomp/diagram.hpp"
#include "wirecomp/matrix.hpp"

namespace wirecomp {

/// A discrete-time linear time-invariant system inhabiting a box:
///   update  s' = A s + B x
///   readout y  = C s
/// Readout is strictly Moore (no feedforward term): y depends only on the
/// state, which is what makes arbitrary feedback interconnection well-defined.
struct LinSystem {
  Box box;
  Matrix a;  // n x n
  Matrix b;  // n x total_in(box)
  Matrix c;  // total_out(box) x n

  std::size_t state_dim() const { return a.rows(); }

  static LinSystem make(Box box, Matrix a, Matrix b, Matrix c);
};

/// Time-indexed record of a simulation. states/outputs have length T+1
/// (the readout of the final state is included); inputs has length T.
struct Trace {
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> outputs;
  std::vector<std::vector<double>> inputs;

  std::size_t steps() const { return inputs.size(); }
};

/// One update step; the output is the readout of the CURRENT state.
std::pair<std::vector<double>, std::vector<double>> step(
    const LinSystem& sys, std::span<const double> s, std::span<const double> x);

Trace simulate(const LinSystem& sys, std::span<const double> s0,
               std::span<const std::vector<double>> inputs);

/// Functor action of a wiring diagram on a system:
///   (A, B, C) |-> (A + B a_f C, B b_f, c_f C), state space unchanged.
LinSystem apply_diagram(const WiringDiagram& d, const LinSystem& sys);

/// Combines systems on parallel boxes into one system on their tensor:
/// block-diagonal A, B, C; state dims add.
LinSystem laxator(std::span<const LinSystem> systems);
LinSystem laxator(std::initializer_list<LinSystem> systems);

/// Operational simulation of an interconnection, without ever forming the
/// composite matrices: at each step readouts are computed from current
/// states, inner inputs are routed as a_f*(readouts) + b_f*(outer input),
/// every subsystem steps, and the outer output is c_f*(readouts).
/// Serves as the independent oracle for apply_diagram.
Trace coupled_simulate(const WiringDiagram& d,
                       std::span<const LinSystem> systems,
                       std::span<const std::vector<double>> s0,
                       std::span<const std::vector<double>> outer_inputs);

}  // namespace wirecomp
