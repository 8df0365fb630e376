#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "wirecomp/dsl.hpp"

using namespace wirecomp;
using namespace wirecomp::dsl;

namespace {

std::string model_path(const char* name) {
  return std::string(WIRECOMP_MODEL_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const Diagnostic* first_error(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error) return &d;
  return nullptr;
}

}  // namespace

TEST_CASE("parse a box declaration") {
  const auto result = parse("box U {\n  in d: R;\n  in e: R^2;\n  out s: R;\n}\n");
  REQUIRE(result.ok());
  REQUIRE(result.model.declarations.size() == 1);
  const auto& box = std::get<BoxDecl>(result.model.declarations[0]);
  CHECK(box.name == "U");
  REQUIRE(box.inputs.size() == 2);
  CHECK(box.inputs[0].name == "d");
  CHECK(box.inputs[0].dim == 1);
  CHECK(box.inputs[1].dim == 2);
  REQUIRE(box.outputs.size() == 1);
  CHECK(box.outputs[0].name == "s");
  CHECK(box.span.line == 1);
  CHECK(box.span.col == 5);
}

TEST_CASE("empty input parses to an empty model") {
  const auto result = parse("");
  CHECK(result.ok());
  CHECK(result.model.declarations.empty());

  const auto comments_only = parse("# nothing but commentary\n# more\n");
  CHECK(comments_only.ok());
  CHECK(comments_only.model.declarations.empty());
}

TEST_CASE("a D matrix in a system is rejected with a Moore explanation") {
  const auto result = parse(
      "system S on B {\n"
      "  state 1;\n"
      "  A = [[0]]; B = [[1]]; C = [[1]];\n"
      "  D = [[1]];\n"
      "}\n");
  CHECK_FALSE(result.ok());
  const Diagnostic* err = first_error(result.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message.find("Moore") != std::string::npos);
  CHECK(err->span.line == 4);
  CHECK(err->span.col == 3);
}

TEST_CASE("syntax errors carry exact spans and parsing recovers") {
  const auto result = parse(
      "box A {\n"
      "  in x: Q;\n"
      "  out y: R;\n"
      "}\n"
      "box B {\n"
      "  in x: R;\n"
      "  out y: R;\n"
      "}\n");
  CHECK_FALSE(result.ok());
  const Diagnostic* err = first_error(result.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message == "unknown space type 'Q' (expected 'R' or 'R^n')");
  CHECK(err->span.line == 2);
  CHECK(err->span.col == 9);
  // Recovery: box B after the broken declaration still parses.
  bool found_b = false;
  for (const auto& decl : result.model.declarations) {
    if (const auto* b = std::get_if<BoxDecl>(&decl))
      if (b->name == "B") found_b = true;
  }
  CHECK(found_b);
}

TEST_CASE("ragged matrix literals are rejected") {
  const auto result = parse(
      "system S on B {\n"
      "  state 2;\n"
      "  A = [[1, 2], [3]];\n"
      "  B = [[1], [1]]; C = [[1, 0]];\n"
      "}\n");
  CHECK_FALSE(result.ok());
  const Diagnostic* err = first_error(result.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message.find("ragged") != std::string::npos);
  CHECK(err->span.line == 3);
}

TEST_CASE("missing semicolon is reported where it happens") {
  const auto result = parse("box A {\n  in x: R\n  out y: R;\n}\n");
  CHECK_FALSE(result.ok());
  const Diagnostic* err = first_error(result.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->span.line == 3);
  CHECK(err->span.col == 3);
}

TEST_CASE("compile resolves forward references") {
  // The diagram appears before the boxes it mentions.
  const auto parsed = parse(
      "diagram d : A -> O {\n"
      "  wire O.x -> A.x;\n"
      "  wire A.y -> O.y;\n"
      "}\n"
      "box A { in x: R; out y: R; }\n"
      "box O { in x: R; out y: R; }\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK(compiled.ok());
  CHECK(compiled.model.diagrams.count("d") == 1);
}

TEST_CASE("compiled UAV routing equals the hand-built fixture") {
  std::string error;
  const auto compiled = load_model(model_path("uav.wd"), &error);
  REQUIRE(error.empty());
  REQUIRE(compiled.ok());

  const auto fx = fixtures::make_uav();
  const auto it = compiled.model.diagrams.find("f");
  REQUIRE(it != compiled.model.diagrams.end());
  CHECK(it->second.a_f == fx.f.a_f);
  CHECK(it->second.b_f == fx.f.b_f);
  CHECK(it->second.c_f == fx.f.c_f);

  const auto sys = compiled.model.systems.find("Dsys");
  REQUIRE(sys != compiled.model.systems.end());
  CHECK(sys->second.a == fx.a_d);
  CHECK(sys->second.b == fx.b_d);
  CHECK(sys->second.c == fx.c_d);

  // The declared composite really is what the loop composes to.
  const auto target = compiled.model.systems.find("UAVsys");
  REQUIRE(target != compiled.model.systems.end());
  const LinSystem composed = apply_diagram(
      it->second, laxator({compiled.model.systems.at("Lsys"),
                           compiled.model.systems.at("Csys"),
                           compiled.model.systems.at("Dsys")}));
  CHECK(approx_eq(composed.a, target->second.a, 1e-12).ok);
  CHECK(approx_eq(composed.b, target->second.b, 1e-12).ok);
  CHECK(approx_eq(composed.c, target->second.c, 1e-12).ok);

  // Implementation tree with leaves in declaration order.
  const auto impl = compiled.model.implementations.find("U");
  REQUIRE(impl != compiled.model.implementations.end());
  CHECK(leaves(impl->second).size() == 10);
  CHECK(compiled.model.directives.size() == 3);
}

TEST_CASE("a diagram with no wires compiles to zero matrices, with warnings") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box O { in x: R; out y: R; }\n"
      "diagram d : A -> O { }\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK(compiled.ok());  // warnings only
  bool warned = false;
  for (const auto& d : compiled.diagnostics)
    if (d.severity == Diagnostic::Severity::Warning &&
        d.message.find("unwired") != std::string::npos)
      warned = true;
  CHECK(warned);
  const auto& wd = compiled.model.diagrams.at("d");
  CHECK(wd.a_f == Matrix::zeros(1, 1));
  CHECK(wd.b_f == Matrix::zeros(1, 1));
  CHECK(wd.c_f == Matrix::zeros(1, 1));
}

TEST_CASE("wire dimension mismatch is a compile error with a span") {
  const auto parsed = parse(
      "box A { in x: R^2; out y: R; }\n"
      "box O { in x: R; out y: R; }\n"
      "diagram d : A -> O {\n"
      "  wire O.x -> A.x;\n"
      "  wire A.y -> O.y;\n"
      "}\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  const Diagnostic* err = first_error(compiled.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message.find("dimension") != std::string::npos);
  CHECK(err->span.line == 4);
}

TEST_CASE("outer input wired straight to an outer output is rejected") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box O { in x: R; out y: R; }\n"
      "diagram d : A -> O {\n"
      "  wire O.x -> O.y;\n"
      "}\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  const Diagnostic* err = first_error(compiled.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message.find("passthrough") != std::string::npos);
}

TEST_CASE("fan-in to one inner input is rejected") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box O { in p: R; in q: R; out y: R; }\n"
      "diagram d : A -> O {\n"
      "  wire O.p -> A.x;\n"
      "  wire O.q -> A.x;\n"
      "  wire A.y -> O.y;\n"
      "}\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  const Diagnostic* err = first_error(compiled.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message.find("fan-in") != std::string::npos);
  CHECK(err->span.line == 5);
}

TEST_CASE("map blocks add arbitrary gains where wires only route") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box O { in x: R; out y: R; }\n"
      "diagram d : A -> O {\n"
      "  map O.x -> A.x [[2.5]];\n"
      "  map A.y -> O.y [[-1]];\n"
      "}\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  REQUIRE(compiled.ok());
  const auto& wd = compiled.model.diagrams.at("d");
  CHECK(wd.b_f == Matrix{{2.5}});
  CHECK(wd.c_f == Matrix{{-1}});
}

TEST_CASE("duplicate and unresolved names are reported") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box A { in x: R; out y: R; }\n"
      "system S on Missing { state 0; A = []; B = []; C = [[], []]; }\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  bool dup = false, unresolved = false;
  for (const auto& d : compiled.diagnostics) {
    if (d.message.find("duplicate box name 'A'") != std::string::npos) {
      dup = true;
      CHECK(d.span.line == 2);
    }
    if (d.message.find("unresolved box reference 'Missing'") != std::string::npos)
      unresolved = true;
  }
  CHECK(dup);
  CHECK(unresolved);
}

TEST_CASE("system matrix shape mismatch names the matrix and both shapes") {
  const auto parsed = parse(
      "box B { in x: R; out y: R; }\n"
      "system S on B { state 2; A = [[1]]; B = [[1], [0]]; C = [[1, 0]]; }\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  const Diagnostic* err = first_error(compiled.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message == "system 'S' matrix A must be 2x2, got 1x1");
}

TEST_CASE("round trip: UAV fixture survives serialize + reparse") {
  const std::string text = read_file(model_path("uav.wd"));
  const auto first = parse(text);
  REQUIRE(first.ok());
  const std::string canon = serialize(first.model);
  const auto second = parse(canon);
  REQUIRE(second.ok());
  CHECK(structurally_equal(first.model, second.model));
  // Canonical form is a fixed point of serialization.
  CHECK(serialize(second.model) == canon);
}

namespace {

// Random model generator: a valid file with boxes, systems on them, and a
// diagram wiring a couple of factors into an outer box.
ModelFile rand_model(fixtures::Rng& rng) {
  std::uniform_int_distribution<std::size_t> nboxes(1, 3), dim(1, 3);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  ModelFile m;
  const std::size_t nb = nboxes(rng);
  for (std::size_t bi = 0; bi < nb; ++bi) {
    BoxDecl box;
    box.name = "B" + std::to_string(bi);
    const std::size_t ni = dim(rng), no = dim(rng);
    for (std::size_t i = 0; i < ni; ++i)
      box.inputs.push_back({"in" + std::to_string(i), dim(rng), {}});
    for (std::size_t i = 0; i < no; ++i)
      box.outputs.push_back({"out" + std::to_string(i), dim(rng), {}});

    SystemDecl sys;
    sys.name = "S" + std::to_string(bi);
    sys.box_name = box.name;
    sys.state_dim = dim(rng);
    std::size_t tin = 0, tout = 0;
    for (const auto& p : box.inputs) tin += p.dim;
    for (const auto& p : box.outputs) tout += p.dim;
    auto fill = [&](MatrixLit& lit, std::size_t r, std::size_t c) {
      lit.rows.assign(r, std::vector<double>(c));
      for (auto& row : lit.rows)
        for (auto& v : row) v = entry(rng);
    };
    fill(sys.a, sys.state_dim, sys.state_dim);
    fill(sys.b, sys.state_dim, tin);
    fill(sys.c, tout, sys.state_dim);

    m.declarations.push_back(std::move(box));
    m.declarations.push_back(std::move(sys));
  }
  // One diagram: B0 alone into an outer box with matching port dims, wired
  // one-to-one. Outer ports mirror B0's so every wire is well-typed.
  const auto& b0 = std::get<BoxDecl>(m.declarations[0]);
  BoxDecl outer;
  outer.name = "Outer";
  for (const auto& p : b0.inputs) outer.inputs.push_back(p);
  for (const auto& p : b0.outputs) outer.outputs.push_back(p);
  DiagramDecl diag;
  diag.name = "d0";
  diag.domain = {b0.name};
  diag.codomain = outer.name;
  for (const auto& p : b0.inputs) {
    WireDecl w;
    w.src = {outer.name, p.name, {}};
    w.dst = {b0.name, p.name, {}};
    diag.wires.push_back(std::move(w));
  }
  for (const auto& p : b0.outputs) {
    WireDecl w;
    w.src = {b0.name, p.name, {}};
    w.dst = {outer.name, p.name, {}};
    diag.wires.push_back(std::move(w));
  }
  m.declarations.push_back(std::move(outer));
  m.declarations.push_back(std::move(diag));
  return m;
}

}  // namespace

TEST_CASE("round trip: random valid models") {
  fixtures::Rng rng(79);
  for (int iter = 0; iter < 100; ++iter) {
    const ModelFile model = rand_model(rng);
    const std::string text = serialize(model);
    const auto reparsed = parse(text);
    REQUIRE_MESSAGE(reparsed.ok(), "failed to reparse:\n" << text);
    CHECK(structurally_equal(model, reparsed.model));
    CHECK(serialize(reparsed.model) == text);
    CHECK(compile(reparsed.model).ok());
  }
}

TEST_CASE("doubles round-trip exactly through serialization") {
  ModelFile m;
  BoxDecl box;
  box.name = "B";
  box.inputs.push_back({"x", 1, {}});
  box.outputs.push_back({"y", 1, {}});
  SystemDecl sys;
  sys.name = "S";
  sys.box_name = "B";
  sys.state_dim = 1;
  sys.a.rows = {{0.1 + 0.2}};  // not representable as a short decimal
  sys.b.rows = {{1e-300}};
  sys.c.rows = {{-56.7}};
  m.declarations.push_back(std::move(box));
  m.declarations.push_back(std::move(sys));

  const auto reparsed = parse(serialize(m));
  REQUIRE(reparsed.ok());
  const auto& got = std::get<SystemDecl>(reparsed.model.declarations[1]);
  CHECK(got.a.rows[0][0] == 0.1 + 0.2);
  CHECK(got.b.rows[0][0] == 1e-300);
  CHECK(got.c.rows[0][0] == -56.7);
}

TEST_CASE("directives compile with resolution and length checks") {
  const auto parsed = parse(
      "box B { in x: R; out y: R; }\n"
      "system S on B { state 1; A = [[0]]; B = [[1]]; C = [[1]]; }\n"
      "simulate S steps 3 s0 [0] inputs constant [1];\n"
      "simulate S steps 2 s0 [0, 0] inputs constant [1];\n"
      "solve S partition [2];\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  CHECK(compiled.model.directives.size() == 1);  // only the first survives
  bool s0_err = false, part_err = false;
  for (const auto& d : compiled.diagnostics) {
    if (d.message.find("initial state has length 2") != std::string::npos)
      s0_err = true;
    if (d.message.find("partition sums to 2") != std::string::npos)
      part_err = true;
  }
  CHECK(s0_err);
  CHECK(part_err);
}

TEST_CASE("nested implement blocks build deeper trees") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box B { in x: R; out y: R; }\n"
      "box C { in x: R; out y: R; }\n"
      "diagram d1 : B -> A { wire A.x -> B.x; wire B.y -> A.y; }\n"
      "diagram d2 : C -> B { wire B.x -> C.x; wire C.y -> B.y; }\n"
      "implement A by d1 {\n"
      "  child B by d2;\n"
      "}\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  REQUIRE(compiled.ok());
  const auto& tree = compiled.model.implementations.at("A");
  const auto lv = leaves(tree);
  REQUIRE(lv.size() == 1);
  CHECK(lv[0].name == "C");
}

TEST_CASE("implement with a child that is not a factor is an error") {
  const auto parsed = parse(
      "box A { in x: R; out y: R; }\n"
      "box B { in x: R; out y: R; }\n"
      "diagram d1 : B -> A { wire A.x -> B.x; wire B.y -> A.y; }\n"
      "implement A by d1 {\n"
      "  child Z by d1;\n"
      "}\n");
  REQUIRE(parsed.ok());
  const auto compiled = compile(parsed.model);
  CHECK_FALSE(compiled.ok());
  const Diagnostic* err = first_error(compiled.diagnostics);
  REQUIRE(err != nullptr);
  CHECK(err->message.find("'Z' is not a domain factor") != std::string::npos);
  CHECK(err->span.line == 5);
}

TEST_CASE("format_diagnostic prints file:line:col") {
  Diagnostic d{Diagnostic::Severity::Error, "boom", {7, 3, 1}};
  CHECK(format_diagnostic(d, "m.wd") == "m.wd:7:3: error: boom");
}
