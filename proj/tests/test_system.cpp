#include <doctest.h>

#include "fixtures.hpp"
#include "wirecomp/system.hpp"

using namespace wirecomp;

namespace {

bool traces_close(const Trace& a, const Trace& b, double tol) {
  if (a.outputs.size() != b.outputs.size()) return false;
  for (std::size_t t = 0; t < a.outputs.size(); ++t) {
    if (a.outputs[t].size() != b.outputs[t].size()) return false;
    for (std::size_t i = 0; i < a.outputs[t].size(); ++i)
      if (std::abs(a.outputs[t][i] - b.outputs[t][i]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("make rejects ill-shaped systems and feedforward-like usage") {
  const Box b{"B", {{"x", 2}}, {{"y", 1}}};
  CHECK_THROWS_AS(
      LinSystem::make(b, Matrix::zeros(2, 1), Matrix::zeros(2, 2), Matrix::zeros(1, 2)),
      DimensionError);
  CHECK_THROWS_AS(
      LinSystem::make(b, Matrix::zeros(2, 2), Matrix::zeros(2, 1), Matrix::zeros(1, 2)),
      DimensionError);
  CHECK_THROWS_AS(
      LinSystem::make(b, Matrix::zeros(2, 2), Matrix::zeros(2, 2), Matrix::zeros(2, 2)),
      DimensionError);
  CHECK_NOTHROW(
      LinSystem::make(b, Matrix::zeros(2, 2), Matrix::zeros(2, 2), Matrix::zeros(1, 2)));
}

TEST_CASE("unit delay: step and simulate") {
  const Box b{"delay", {{"x", 1}}, {{"y", 1}}};
  const LinSystem delay =
      LinSystem::make(b, Matrix{{0}}, Matrix{{1}}, Matrix{{1}});

  const auto [s1, y0] = step(delay, std::vector<double>{5.0},
                             std::vector<double>{7.0});
  CHECK(y0 == std::vector<double>{5.0});  // readout of the current state
  CHECK(s1 == std::vector<double>{7.0});

  const std::vector<std::vector<double>> inputs{{1}, {2}, {3}};
  const Trace tr = simulate(delay, std::vector<double>{0.0}, inputs);
  REQUIRE(tr.states.size() == 4);
  REQUIRE(tr.outputs.size() == 4);
  CHECK(tr.outputs[0] == std::vector<double>{0.0});
  CHECK(tr.outputs[1] == std::vector<double>{1.0});
  CHECK(tr.outputs[2] == std::vector<double>{2.0});
  CHECK(tr.outputs[3] == std::vector<double>{3.0});
}

TEST_CASE("constant system holds its state") {
  const Box b{"hold", {{"x", 1}}, {{"y", 1}}};
  const LinSystem hold = LinSystem::make(b, Matrix{{1}}, Matrix{{0}}, Matrix{{1}});
  const Trace tr = simulate(hold, std::vector<double>{3.0},
                            std::vector<std::vector<double>>{{9}, {9}, {9}});
  for (const auto& y : tr.outputs) CHECK(y == std::vector<double>{3.0});
}

TEST_CASE("pitch dynamics single step matches a hand computation") {
  const auto fx = fixtures::make_uav();
  const std::vector<double> s{1.0, 0.0, 0.0};
  const std::vector<double> x{2.0};
  const auto [s1, y] = step(fx.dsys, s, x);
  CHECK(y == std::vector<double>{0.0});  // C_D = (0 0 1)
  CHECK(s1[0] == doctest::Approx(-0.313 + 0.232 * 2.0).epsilon(1e-12));
  CHECK(s1[1] == doctest::Approx(-0.0139 + 0.0203 * 2.0).epsilon(1e-12));
  CHECK(s1[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("full self-feedback on a scalar system folds C into A") {
  // One box with one input and one output, wired output -> input, nothing
  // exposed except the output. A' = A + B*1*C = 2 + 3*1 = 5.
  const Box inner{"S", {{"x", 1}}, {{"y", 1}}};
  const Box outer{"O", {}, {{"y", 1}}};
  const LinSystem sys =
      LinSystem::make(inner, Matrix{{2}}, Matrix{{3}}, Matrix{{1}});
  const WiringDiagram loop = WiringDiagram::make(
      {inner}, outer, Matrix{{1}}, Matrix(1, 0), Matrix{{1}});
  const LinSystem closed = apply_diagram(loop, sys);
  CHECK(closed.a == Matrix{{5}});
  CHECK(closed.b.cols() == 0);
  CHECK(closed.c == Matrix{{1}});
}

TEST_CASE("apply_diagram rejects a system on the wrong box") {
  const auto fx = fixtures::make_uav();
  CHECK_THROWS_AS(apply_diagram(fx.f, fx.dsys), BoundaryError);
}

TEST_CASE("UAV composite has the expected block structure") {
  const auto fx = fixtures::make_uav();
  const LinSystem composite =
      apply_diagram(fx.f, laxator({fx.lsys, fx.csys, fx.dsys}));
  REQUIRE(composite.state_dim() == 5);

  // State order (L, C, D-part). Readout picks out the altitude state.
  CHECK(composite.c == Matrix{{0, 0, 0, 0, 1}});
  // Pitch dynamics block survives untouched on the diagonal.
  CHECK(submatrix(composite.a, 2, 5, 2, 5) == fx.a_d);
  // Controller command drives the dynamics through B_D.
  CHECK(submatrix(composite.a, 2, 5, 1, 2) == fx.b_d);
  // Sensor sees the altitude readout: A[L, D-block] = B_L.s * C_D.
  CHECK(submatrix(composite.a, 0, 1, 2, 5) == Matrix{{0, 0, 1}});
  // Controller sees the sensor: A[C, L] = B_C.sp * C_L = -1.
  CHECK(composite.a(1, 0) == -1.0);
  // External inputs: d feeds the controller, e feeds the sensor.
  CHECK(composite.b == Matrix{{0, 1}, {1, 0}, {0, 0}, {0, 0}, {0, 0}});
}

TEST_CASE("laxator stacks systems block-diagonally") {
  const auto fx = fixtures::make_uav();
  const LinSystem prod = laxator({fx.lsys, fx.csys, fx.dsys});
  CHECK(prod.state_dim() == 5);
  CHECK(prod.a == block_diag({fx.lsys.a, fx.csys.a, fx.dsys.a}));
  CHECK(prod.b == block_diag({fx.lsys.b, fx.csys.b, fx.dsys.b}));
  CHECK(prod.c == block_diag({fx.lsys.c, fx.csys.c, fx.dsys.c}));
  CHECK(prod.box.total_in() == 5);
  CHECK(prod.box.total_out() == 3);
}

TEST_CASE("identity diagram preserves the system exactly") {
  fixtures::Rng rng(43);
  for (int iter = 0; iter < 20; ++iter) {
    const Box b = fixtures::rand_box(rng, "B");
    const LinSystem sys = fixtures::rand_system(rng, b);
    const LinSystem mapped = apply_diagram(identity_diagram(b), sys);
    CHECK(approx_eq(mapped.a, sys.a, 1e-12).ok);
    CHECK(approx_eq(mapped.b, sys.b, 1e-12).ok);
    CHECK(approx_eq(mapped.c, sys.c, 1e-12).ok);
  }
}

TEST_CASE("coupled simulation agrees with the composite system") {
  fixtures::Rng rng(47);
  const auto fx = fixtures::make_uav();
  const std::vector<LinSystem> systems{fx.lsys, fx.csys, fx.dsys};
  const LinSystem composite = apply_diagram(fx.f, laxator(systems));

  const std::size_t T = 50;
  const auto inputs = fixtures::rand_inputs(rng, T, 2);
  const std::vector<std::vector<double>> s0{{0.1}, {-0.2}, {0.3, 0.0, -0.1}};
  std::vector<double> s0_flat;
  for (const auto& part : s0) s0_flat.insert(s0_flat.end(), part.begin(), part.end());

  const Trace direct = simulate(composite, s0_flat, inputs);
  const Trace routed = coupled_simulate(fx.f, systems, s0, inputs);
  CHECK(traces_close(direct, routed, 1e-9));
}

TEST_CASE("coupled simulation oracle on random interconnections") {
  fixtures::Rng rng(53);
  for (int iter = 0; iter < 50; ++iter) {
    const Box a = fixtures::rand_box(rng, "A");
    const Box b = fixtures::rand_box(rng, "B");
    const Box outer = fixtures::rand_box(rng, "O");
    const WiringDiagram d = fixtures::rand_diagram(rng, {a, b}, outer);
    const std::vector<LinSystem> systems{fixtures::rand_system(rng, a, 2),
                                         fixtures::rand_system(rng, b, 2)};
    const LinSystem composite = apply_diagram(d, laxator(systems));

    // Keep runs short; random feedback gains can blow up over long horizons.
    const std::size_t T = 8;
    const auto inputs = fixtures::rand_inputs(rng, T, outer.total_in());
    std::vector<std::vector<double>> s0;
    std::vector<double> s0_flat;
    for (const auto& sys : systems) {
      s0.push_back(fixtures::rand_vector(rng, sys.state_dim()));
      s0_flat.insert(s0_flat.end(), s0.back().begin(), s0.back().end());
    }
    const Trace direct = simulate(composite, s0_flat, inputs);
    const Trace routed = coupled_simulate(d, systems, s0, inputs);
    CHECK(traces_close(direct, routed, 1e-9));
  }
}

TEST_CASE("simulation is linear in the input") {
  fixtures::Rng rng(59);
  const Box b = fixtures::rand_box(rng, "B");
  const LinSystem sys = fixtures::rand_system(rng, b, 3);
  const std::size_t T = 10;
  const auto u = fixtures::rand_inputs(rng, T, b.total_in());
  const auto v = fixtures::rand_inputs(rng, T, b.total_in());
  std::vector<std::vector<double>> sum(T, std::vector<double>(b.total_in()));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t i = 0; i < b.total_in(); ++i)
      sum[t][i] = u[t][i] + v[t][i];

  const std::vector<double> zero(sys.state_dim(), 0.0);
  const Trace tu = simulate(sys, zero, u);
  const Trace tv = simulate(sys, zero, v);
  const Trace ts = simulate(sys, zero, sum);
  for (std::size_t t = 0; t <= T; ++t)
    for (std::size_t i = 0; i < b.total_out(); ++i)
      CHECK(ts.outputs[t][i] ==
            doctest::Approx(tu.outputs[t][i] + tv.outputs[t][i]).epsilon(1e-9));
}

TEST_CASE("functoriality: mapping through a composite equals mapping twice") {
  fixtures::Rng rng(61);
  for (int iter = 0; iter < 30; ++iter) {
    const Box x = fixtures::rand_box(rng, "X");
    const Box y = fixtures::rand_box(rng, "Y");
    const Box z = fixtures::rand_box(rng, "Z");
    const WiringDiagram g = fixtures::rand_diagram(rng, {x}, y);
    const WiringDiagram f = fixtures::rand_diagram(rng, {y}, z);
    const LinSystem sys = fixtures::rand_system(rng, x);

    const LinSystem via_composite = apply_diagram(compose_diagrams(g, f), sys);
    const LinSystem stepwise = apply_diagram(f, apply_diagram(g, sys));
    CHECK(approx_eq(via_composite.a, stepwise.a, 1e-12).ok);
    CHECK(approx_eq(via_composite.b, stepwise.b, 1e-12).ok);
    CHECK(approx_eq(via_composite.c, stepwise.c, 1e-12).ok);
  }
}

TEST_CASE("laxator naturality: tensor of mapped equals mapped tensor") {
  fixtures::Rng rng(67);
  for (int iter = 0; iter < 30; ++iter) {
    const Box a = fixtures::rand_box(rng, "A");
    const Box b = fixtures::rand_box(rng, "B");
    const Box p = fixtures::rand_box(rng, "P");
    const Box q = fixtures::rand_box(rng, "Q");
    const WiringDiagram f = fixtures::rand_diagram(rng, {a}, p);
    const WiringDiagram g = fixtures::rand_diagram(rng, {b}, q);
    const LinSystem sa = fixtures::rand_system(rng, a);
    const LinSystem sb = fixtures::rand_system(rng, b);

    const LinSystem lhs = laxator({apply_diagram(f, sa), apply_diagram(g, sb)});
    const LinSystem rhs =
        apply_diagram(tensor_diagrams({f, g}), laxator({sa, sb}));
    CHECK(approx_eq(lhs.a, rhs.a, 1e-12).ok);
    CHECK(approx_eq(lhs.b, rhs.b, 1e-12).ok);
    CHECK(approx_eq(lhs.c, rhs.c, 1e-12).ok);
  }
}
