#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wirecomp/hierarchy.hpp"
#include "wirecomp/inverse.hpp"
#include "wirecomp/system.hpp"

namespace wirecomp::dsl {

/// 1-based source location attached to every parse node and diagnostic.
struct SourceSpan {
  int line = 1;
  int col = 1;
  int len = 0;
};

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;
};

std::string format_diagnostic(const Diagnostic& d, const std::string& file);

// ---------------------------------------------------------------------------
// Abstract syntax. Structural equality ignores spans.

struct PortDecl {
  std::string name;
  std::size_t dim = 1;
  SourceSpan span;
};

struct BoxDecl {
  std::string name;
  std::vector<PortDecl> inputs;
  std::vector<PortDecl> outputs;
  SourceSpan span;
};

struct MatrixLit {
  std::vector<std::vector<double>> rows;
  SourceSpan span;
};

struct SystemDecl {
  std::string name;
  std::string box_name;
  std::size_t state_dim = 0;
  MatrixLit a, b, c;
  SourceSpan span;
};

/// `Box.port`; the codomain box name addresses the outer boundary.
struct EndpointRef {
  std::string box;
  std::string port;
  SourceSpan span;
};

struct WireDecl {
  EndpointRef src;
  EndpointRef dst;
  SourceSpan span;
};

/// `map SRC -> DST [[..]]`: an arbitrary real block (dst_dim x src_dim).
struct MapDecl {
  EndpointRef src;
  EndpointRef dst;
  MatrixLit block;
  SourceSpan span;
};

struct DiagramDecl {
  std::string name;
  std::vector<std::string> domain;  // factor box names, in tensor order
  std::string codomain;
  std::vector<WireDecl> wires;
  std::vector<MapDecl> maps;
  SourceSpan span;
};

/// `implement BOX by DIAGRAM { child B by D; ... }`. Children may nest; a
/// domain factor without a child entry is a leaf.
struct ImplementDecl {
  struct Child {
    std::string box_name;
    std::string diagram_name;
    std::vector<Child> children;
    SourceSpan span;
  };
  std::string box_name;
  std::string diagram_name;
  std::vector<Child> children;
  SourceSpan span;
};

struct SimulateDirective {
  std::string system;  // a system name, or empty when diagram+systems given
  std::string diagram;
  std::vector<std::string> systems;
  std::size_t steps = 0;
  std::vector<double> s0;
  bool constant_input = true;
  MatrixLit input;  // one row when constant, else one row per step
  SourceSpan span;
};

struct CheckDirective {
  std::string diagram;
  std::vector<std::string> systems;
  std::string target;
  std::optional<double> tol;
  SourceSpan span;
};

struct SolveDirective {
  std::string system;
  std::vector<std::size_t> partition;
  std::optional<double> tol;
  SourceSpan span;
};

using Directive = std::variant<SimulateDirective, CheckDirective, SolveDirective>;

using Declaration =
    std::variant<BoxDecl, SystemDecl, DiagramDecl, ImplementDecl, Directive>;

struct ModelFile {
  std::vector<Declaration> declarations;
};

// ---------------------------------------------------------------------------

struct ParseResult {
  ModelFile model;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

/// Full parse with recovery: reports all syntax errors it can reach.
ParseResult parse(std::string_view text);

/// Canonical formatting; parse(serialize(m)) is structurally equal to m.
std::string serialize(const ModelFile& m);

/// Field-by-field equality ignoring source spans.
bool structurally_equal(const ModelFile& a, const ModelFile& b);

// ---------------------------------------------------------------------------
// Name resolution and lowering to core values.

struct CompiledModel {
  std::map<std::string, Box> boxes;
  std::map<std::string, LinSystem> systems;
  std::map<std::string, WiringDiagram> diagrams;
  std::map<std::string, Decomposition> implementations;  // keyed by root box
  std::vector<Directive> directives;
};

struct CompileResult {
  CompiledModel model;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

/// Order-independent resolution: declarations may reference names defined
/// later in the file. Diagnostics cover duplicate names, unresolved
/// references, dimension mismatches, routing fan-in, and the passthrough
/// restriction (an outer input may not be wired straight to an outer output).
CompileResult compile(const ModelFile& m);

/// Parse + compile a file on disk; diagnostics are prefixed with `path`.
CompileResult load_model(const std::string& path, std::string* error);

}  // namespace wirecomp::dsl
