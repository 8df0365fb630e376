#include "wirecomp/system.hpp"

#include <string>

namespace wirecomp {

LinSystem LinSystem::make(Box box, Matrix a, Matrix b, Matrix c) {
  const std::size_t n = a.rows();
  if (a.cols() != n) {
    throw DimensionError("system A must be square, got " + a.shape_str());
  }
  if (b.rows() != n || b.cols() != box.total_in()) {
    throw DimensionError("system B must be " + std::to_string(n) + "x" +
                         std::to_string(box.total_in()) + ", got " +
                         b.shape_str());
  }
  if (c.rows() != box.total_out() || c.cols() != n) {
    throw DimensionError("system C must be " +
                         std::to_string(box.total_out()) + "x" +
                         std::to_string(n) + ", got " + c.shape_str());
  }
  return LinSystem{std::move(box), std::move(a), std::move(b), std::move(c)};
}

std::pair<std::vector<double>, std::vector<double>> step(
    const LinSystem& sys, std::span<const double> s, std::span<const double> x) {
  if (s.size() != sys.state_dim()) {
    throw DimensionError("state vector length " + std::to_string(s.size()) +
                         " does not match state dim " +
                         std::to_string(sys.state_dim()));
  }
  std::vector<double> next = mat_vec(sys.a, s);
  const std::vector<double> forced = mat_vec(sys.b, x);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += forced[i];
  return {std::move(next), mat_vec(sys.c, s)};
}

Trace simulate(const LinSystem& sys, std::span<const double> s0,
               std::span<const std::vector<double>> inputs) {
  Trace tr;
  tr.states.emplace_back(s0.begin(), s0.end());
  for (const auto& x : inputs) {
    auto [next, y] = step(sys, tr.states.back(), x);
    tr.outputs.push_back(std::move(y));
    tr.states.push_back(std::move(next));
    tr.inputs.push_back(x);
  }
  tr.outputs.push_back(mat_vec(sys.c, tr.states.back()));
  return tr;
}

LinSystem apply_diagram(const WiringDiagram& d, const LinSystem& sys) {
  if (!same_interface(sys.box, d.domain())) {
    throw BoundaryError("system on box '" + sys.box.name +
                        "' does not fit the domain of the diagram into '" +
                        d.codomain.name + "'");
  }
  return LinSystem::make(d.codomain,
                         sys.a + sys.b * d.a_f * sys.c,
                         sys.b * d.b_f,
                         d.c_f * sys.c);
}

LinSystem laxator(std::span<const LinSystem> systems) {
  std::vector<Box> boxes;
  std::vector<Matrix> as, bs, cs;
  for (const auto& s : systems) {
    boxes.push_back(s.box);
    as.push_back(s.a);
    bs.push_back(s.b);
    cs.push_back(s.c);
  }
  return LinSystem::make(tensor_boxes(boxes), block_diag(as), block_diag(bs),
                         block_diag(cs));
}

LinSystem laxator(std::initializer_list<LinSystem> systems) {
  return laxator(std::span<const LinSystem>(systems.begin(), systems.size()));
}

Trace coupled_simulate(const WiringDiagram& d,
                       std::span<const LinSystem> systems,
                       std::span<const std::vector<double>> s0,
                       std::span<const std::vector<double>> outer_inputs) {
  std::vector<Box> boxes;
  for (const auto& s : systems) boxes.push_back(s.box);
  if (!same_interface(tensor_boxes(boxes), d.domain())) {
    throw BoundaryError(
        "tensor of system boxes does not match the diagram domain of '" +
        d.codomain.name + "'");
  }
  if (s0.size() != systems.size()) {
    throw DimensionError("expected " + std::to_string(systems.size()) +
                         " initial state vectors, got " +
                         std::to_string(s0.size()));
  }

  std::vector<std::vector<double>> states(s0.begin(), s0.end());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (states[i].size() != systems[i].state_dim()) {
      throw DimensionError("initial state " + std::to_string(i) +
                           " has length " + std::to_string(states[i].size()) +
                           ", expected " +
                           std::to_string(systems[i].state_dim()));
    }
  }

  auto stacked = [](const std::vector<std::vector<double>>& parts) {
    std::vector<double> v;
    for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
    return v;
  };

  Trace tr;
  tr.states.push_back(stacked(states));

  auto readouts = [&]() {
    std::vector<std::vector<double>> ys;
    for (std::size_t i = 0; i < systems.size(); ++i)
      ys.push_back(mat_vec(systems[i].c, states[i]));
    return stacked(ys);
  };

  for (const auto& u : outer_inputs) {
    const std::vector<double> y_inner = readouts();
    std::vector<double> x_inner = mat_vec(d.a_f, y_inner);
    const std::vector<double> external = mat_vec(d.b_f, u);
    for (std::size_t i = 0; i < x_inner.size(); ++i) x_inner[i] += external[i];

    tr.outputs.push_back(mat_vec(d.c_f, y_inner));
    tr.inputs.push_back(u);

    std::size_t off = 0;
    for (std::size_t i = 0; i < systems.size(); ++i) {
      const std::size_t k = systems[i].box.total_in();
      const std::span<const double> xi(x_inner.data() + off, k);
      off += k;
      auto [next, y] = step(systems[i], states[i], xi);
      states[i] = std::move(next);
    }
    tr.states.push_back(stacked(states));
  }
  tr.outputs.push_back(mat_vec(d.c_f, readouts()));
  return tr;
}

}  // namespace wirecomp
