#pragma once

#include <random>
#include <vector>

#include "wirecomp/hierarchy.hpp"
#include "wirecomp/system.hpp"

// Shared test fixtures: the UAV loop built directly in code (independent of
// the DSL path), plus random generators for property tests.
namespace fixtures {

using namespace wirecomp;

struct Uav {
  Box u, l, c, d;
  WiringDiagram f;  // L (*) C (*) D -> U
  LinSystem lsys, csys, dsys;
  Matrix a_d, b_d, c_d;  // pitch dynamics blocks
};

inline Uav make_uav() {
  Uav fx;
  fx.u = Box{"U", {{"d", 1}, {"e", 1}}, {{"s", 1}}};
  fx.l = Box{"L", {{"e", 1}, {"s", 1}}, {{"sp", 1}}};
  fx.c = Box{"C", {{"d", 1}, {"sp", 1}}, {{"c", 1}}};
  fx.d = Box{"D", {{"c", 1}}, {{"s", 1}}};

  // Inner inputs stack as (L.e, L.s, C.d, C.sp, D.c); inner outputs as
  // (L.sp, C.c, D.s); outer inputs as (d, e).
  Matrix a_f(5, 3), b_f(5, 2), c_f(1, 3);
  a_f.set(1, 2, 1.0);  // D.s  -> L.s
  a_f.set(3, 0, 1.0);  // L.sp -> C.sp
  a_f.set(4, 1, 1.0);  // C.c  -> D.c
  b_f.set(0, 1, 1.0);  // U.e  -> L.e
  b_f.set(2, 0, 1.0);  // U.d  -> C.d
  c_f.set(0, 2, 1.0);  // D.s  -> U.s
  fx.f = WiringDiagram::make({fx.l, fx.c, fx.d}, fx.u, a_f, b_f, c_f);

  fx.a_d = Matrix{{-0.313, 56.7, 0}, {-0.0139, -0.426, 0}, {0, 56.7, 0}};
  fx.b_d = Matrix{{0.232}, {0.0203}, {0}};
  fx.c_d = Matrix{{0, 0, 1}};
  fx.dsys = LinSystem::make(fx.d, fx.a_d, fx.b_d, fx.c_d);
  fx.lsys = LinSystem::make(fx.l, Matrix{{0}}, Matrix{{1, 1}}, Matrix{{1}});
  fx.csys = LinSystem::make(fx.c, Matrix{{0}}, Matrix{{1, -1}}, Matrix{{1}});
  return fx;
}

struct Implementation {
  Box i1, i2, p1, p2, v, x, y, z, w, f_frame;
  WiringDiagram g, h, k;  // into L, C, D respectively
  Decomposition tree;     // full two-level tree over U
};

inline Implementation make_uav_implementation(const Uav& uav) {
  Implementation impl;
  impl.i1 = Box{"I1", {{"e", 1}, {"s", 1}}, {{"m", 1}}};
  impl.i2 = Box{"I2", {{"e", 1}, {"s", 1}}, {{"m", 1}}};
  impl.p1 = Box{"P1", {{"m1", 1}, {"m2", 1}}, {{"sp", 1}}};
  impl.p2 = Box{"P2", {{"d", 1}, {"sp", 1}}, {{"u", 1}}};
  impl.v = Box{"V", {{"u", 1}}, {{"c", 1}}};
  impl.x = Box{"X", {{"c", 1}}, {{"o", 1}}};
  impl.y = Box{"Y", {{"c", 1}}, {{"o", 1}}};
  impl.z = Box{"Z", {{"c", 1}}, {{"o", 1}}};
  impl.w = Box{"W", {{"c", 1}}, {{"o", 1}}};
  impl.f_frame = Box{"F", {{"ox", 1}, {"oy", 1}, {"oz", 1}, {"ow", 1}}, {{"s", 1}}};

  {  // g : I1 (*) I2 (*) P1 -> L, redundant IMUs fused by a processor
    // inner inputs (I1.e, I1.s, I2.e, I2.s, P1.m1, P1.m2); outputs (I1.m, I2.m, P1.sp)
    Matrix a_f(6, 3), b_f(6, 2), c_f(1, 3);
    a_f.set(4, 0, 1.0);  // I1.m -> P1.m1
    a_f.set(5, 1, 1.0);  // I2.m -> P1.m2
    b_f.set(0, 0, 1.0);  // L.e -> I1.e
    b_f.set(1, 1, 1.0);  // L.s -> I1.s
    b_f.set(2, 0, 1.0);  // L.e -> I2.e
    b_f.set(3, 1, 1.0);  // L.s -> I2.s
    c_f.set(0, 2, 1.0);  // P1.sp -> L.sp
    impl.g = WiringDiagram::make({impl.i1, impl.i2, impl.p1}, uav.l, a_f, b_f, c_f);
  }
  {  // h : P2 (*) V -> C, serial chain
    // inner inputs (P2.d, P2.sp, V.u); outputs (P2.u, V.c)
    Matrix a_f(3, 2), b_f(3, 2), c_f(1, 2);
    a_f.set(2, 0, 1.0);  // P2.u -> V.u
    b_f.set(0, 0, 1.0);  // C.d -> P2.d
    b_f.set(1, 1, 1.0);  // C.sp -> P2.sp
    c_f.set(0, 1, 1.0);  // V.c -> C.c
    impl.h = WiringDiagram::make({impl.p2, impl.v}, uav.c, a_f, b_f, c_f);
  }
  {  // k : X (*) Y (*) Z (*) W (*) F -> D, four parallel surfaces into the airframe
    // inner inputs (X.c, Y.c, Z.c, W.c, F.ox..F.ow); outputs (X.o..W.o, F.s)
    Matrix a_f(8, 5), b_f(8, 1), c_f(1, 5);
    for (std::size_t i = 0; i < 4; ++i) {
      a_f.set(4 + i, i, 1.0);  // surface outputs fan into F
      b_f.set(i, 0, 1.0);      // D.c fans out to every surface
    }
    c_f.set(0, 4, 1.0);  // F.s -> D.s
    impl.k = WiringDiagram::make({impl.x, impl.y, impl.z, impl.w, impl.f_frame},
                                 uav.d, a_f, b_f, c_f);
  }
  impl.tree = Decomposition::make(
      uav.f, {Decomposition::leaf_tree(impl.g), Decomposition::leaf_tree(impl.h),
              Decomposition::leaf_tree(impl.k)});
  return impl;
}

// ---------------------------------------------------------------------------
// Random instances for property tests. Deterministic under a fixed seed.

using Rng = std::mt19937;

inline double rand_entry(Rng& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return dist(rng);
}

inline Matrix rand_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> entries(rows * cols);
  for (auto& v : entries) v = rand_entry(rng);
  return Matrix(rows, cols, std::move(entries));
}

inline Box rand_box(Rng& rng, const std::string& name, std::size_t max_ports = 2,
                    std::size_t max_dim = 3) {
  std::uniform_int_distribution<std::size_t> nports(1, max_ports);
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  Box b;
  b.name = name;
  const std::size_t ni = nports(rng), no = nports(rng);
  for (std::size_t i = 0; i < ni; ++i)
    b.inputs.push_back({"in" + std::to_string(i), dim(rng)});
  for (std::size_t i = 0; i < no; ++i)
    b.outputs.push_back({"out" + std::to_string(i), dim(rng)});
  return b;
}

inline LinSystem rand_system(Rng& rng, const Box& box, std::size_t max_state = 4) {
  std::uniform_int_distribution<std::size_t> sd(0, max_state);
  const std::size_t n = sd(rng);
  return LinSystem::make(box, rand_matrix(rng, n, n),
                         rand_matrix(rng, n, box.total_in()),
                         rand_matrix(rng, box.total_out(), n));
}

/// Random diagram from the given factors to a random codomain box.
inline WiringDiagram rand_diagram(Rng& rng, std::vector<Box> factors,
                                  const Box& codomain) {
  const Box dom = tensor_boxes(factors);
  return WiringDiagram::make(
      std::move(factors), codomain,
      rand_matrix(rng, dom.total_in(), dom.total_out()),
      rand_matrix(rng, dom.total_in(), codomain.total_in()),
      rand_matrix(rng, codomain.total_out(), dom.total_out()));
}

inline std::vector<std::vector<double>> rand_inputs(Rng& rng, std::size_t steps,
                                                    std::size_t dim) {
  std::vector<std::vector<double>> rows(steps, std::vector<double>(dim));
  for (auto& row : rows)
    for (auto& v : row) v = rand_entry(rng);
  return rows;
}

inline std::vector<double> rand_vector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = rand_entry(rng);
  return v;
}

}  // namespace fixtures
