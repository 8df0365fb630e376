#include <cmath>

#include "dsl_internal.hpp"

namespace wirecomp::dsl {

bool ParseResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Diagnostic::Severity::Error) return false;
  return true;
}

namespace {

const char* kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Semi: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::LArrow: return "'<-'";
    case TokenKind::Tensor: return "'(*)'";
    case TokenKind::End: return "end of input";
    case TokenKind::Invalid: return "invalid token";
  }
  return "?";
}

struct ParseAbort {};  // thrown to unwind to the nearest recovery point

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : tokens_(std::move(tokens)), diags_(diags) {}

  ModelFile parse_model() {
    ModelFile model;
    while (!at(TokenKind::End)) {
      const std::size_t before = pos_;
      try {
        parse_declaration(model);
      } catch (const ParseAbort&) {
        synchronize();
      }
      if (pos_ == before) next();  // always make progress
    }
    return model;
  }

 private:
  const Token& peek(int ahead = 0) const {
    const std::size_t j = pos_ + ahead;
    return j < tokens_.size() ? tokens_[j] : tokens_.back();
  }
  bool at(TokenKind k) const { return peek().kind == k; }
  bool at_keyword(const char* kw) const {
    return at(TokenKind::Ident) && peek().text == kw;
  }
  const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg, const SourceSpan& span) {
    diags_.push_back({Diagnostic::Severity::Error, msg, span});
    throw ParseAbort{};
  }

  Token expect(TokenKind k, const char* what) {
    if (!at(k)) {
      fail(std::string("expected ") + what + ", found " +
               (peek().kind == TokenKind::Ident || peek().kind == TokenKind::Number
                    ? "'" + peek().text + "'"
                    : kind_name(peek().kind)),
           peek().span);
    }
    return next();
  }

  Token expect_keyword(const char* kw) {
    if (!at_keyword(kw)) {
      fail(std::string("expected '") + kw + "'", peek().span);
    }
    return next();
  }

  std::size_t expect_nonneg_int(const char* what) {
    const Token t = expect(TokenKind::Number, what);
    if (t.number < 0 || t.number != std::floor(t.number)) {
      fail(std::string(what) + " must be a non-negative integer", t.span);
    }
    return static_cast<std::size_t>(t.number);
  }

  // Skip to just past the next ';' or matching '}' so the next declaration
  // can be parsed. Keeps brace nesting balanced.
  void synchronize() {
    int depth = 0;
    while (!at(TokenKind::End)) {
      const TokenKind k = peek().kind;
      if (k == TokenKind::Semi && depth == 0) {
        next();
        return;
      }
      if (k == TokenKind::LBrace) ++depth;
      if (k == TokenKind::RBrace) {
        next();
        if (depth <= 1) return;
        --depth;
        continue;
      }
      next();
    }
  }

  void parse_declaration(ModelFile& model) {
    if (at_keyword("box")) {
      next();
      model.declarations.push_back(parse_box());
    } else if (at_keyword("system")) {
      next();
      model.declarations.push_back(parse_system());
    } else if (at_keyword("diagram")) {
      next();
      model.declarations.push_back(parse_diagram());
    } else if (at_keyword("implement")) {
      next();
      model.declarations.push_back(parse_implement());
    } else if (at_keyword("simulate")) {
      next();
      model.declarations.push_back(Directive{parse_simulate()});
    } else if (at_keyword("check")) {
      next();
      model.declarations.push_back(Directive{parse_check()});
    } else if (at_keyword("solve")) {
      next();
      model.declarations.push_back(Directive{parse_solve()});
    } else {
      fail("expected a declaration (box, system, diagram, implement, "
           "simulate, check, or solve)",
           peek().span);
    }
  }

  BoxDecl parse_box() {
    BoxDecl box;
    const Token name = expect(TokenKind::Ident, "box name");
    box.name = name.text;
    box.span = name.span;
    expect(TokenKind::LBrace, "'{'");
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      const bool is_in = at_keyword("in");
      if (!is_in && !at_keyword("out")) {
        fail("expected 'in' or 'out' port declaration", peek().span);
      }
      next();
      PortDecl port;
      const Token pname = expect(TokenKind::Ident, "port name");
      port.name = pname.text;
      port.span = pname.span;
      expect(TokenKind::Colon, "':'");
      port.dim = parse_space_type();
      expect(TokenKind::Semi, "';'");
      (is_in ? box.inputs : box.outputs).push_back(std::move(port));
    }
    expect(TokenKind::RBrace, "'}'");
    return box;
  }

  // R or R^n
  std::size_t parse_space_type() {
    const Token r = expect(TokenKind::Ident, "space type 'R' or 'R^n'");
    if (r.text != "R") {
      fail("unknown space type '" + r.text + "' (expected 'R' or 'R^n')",
           r.span);
    }
    if (!at(TokenKind::Caret)) return 1;
    next();
    const std::size_t dim = expect_nonneg_int("port dimension");
    if (dim < 1) fail("port dimension must be at least 1", peek(-1).span);
    return dim;
  }

  MatrixLit parse_matrix() {
    MatrixLit lit;
    const Token open = expect(TokenKind::LBracket, "matrix literal");
    lit.span = open.span;
    if (at(TokenKind::RBracket)) {  // [] is the empty matrix
      next();
      return lit;
    }
    while (true) {
      lit.rows.push_back(parse_number_list());
      if (at(TokenKind::Comma)) {
        next();
        continue;
      }
      break;
    }
    expect(TokenKind::RBracket, "']'");
    for (const auto& row : lit.rows) {
      if (row.size() != lit.rows.front().size()) {
        fail("ragged matrix literal: rows of length " +
                 std::to_string(lit.rows.front().size()) + " and " +
                 std::to_string(row.size()),
             lit.span);
      }
    }
    return lit;
  }

  std::vector<double> parse_number_list() {
    std::vector<double> values;
    expect(TokenKind::LBracket, "'['");
    while (!at(TokenKind::RBracket)) {
      values.push_back(expect(TokenKind::Number, "number").number);
      if (at(TokenKind::Comma)) next();
    }
    expect(TokenKind::RBracket, "']'");
    return values;
  }

  SystemDecl parse_system() {
    SystemDecl sys;
    const Token name = expect(TokenKind::Ident, "system name");
    sys.name = name.text;
    sys.span = name.span;
    expect_keyword("on");
    sys.box_name = expect(TokenKind::Ident, "box name").text;
    expect(TokenKind::LBrace, "'{'");
    expect_keyword("state");
    sys.state_dim = expect_nonneg_int("state dimension");
    expect(TokenKind::Semi, "';'");
    bool have_a = false, have_b = false, have_c = false;
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      const Token key = expect(TokenKind::Ident, "matrix name A, B, or C");
      if (key.text == "D") {
        diags_.push_back({Diagnostic::Severity::Error,
                          "feedforward D must be zero: readout is Moore "
                          "(y = C s), so no D matrix is accepted",
                          key.span});
        expect(TokenKind::Equals, "'='");
        parse_matrix();
        expect(TokenKind::Semi, "';'");
        continue;
      }
      if (key.text != "A" && key.text != "B" && key.text != "C") {
        fail("expected matrix name A, B, or C, found '" + key.text + "'",
             key.span);
      }
      expect(TokenKind::Equals, "'='");
      MatrixLit lit = parse_matrix();
      expect(TokenKind::Semi, "';'");
      if (key.text == "A") { sys.a = std::move(lit); have_a = true; }
      if (key.text == "B") { sys.b = std::move(lit); have_b = true; }
      if (key.text == "C") { sys.c = std::move(lit); have_c = true; }
    }
    const Token close = expect(TokenKind::RBrace, "'}'");
    if (!have_a || !have_b || !have_c) {
      diags_.push_back({Diagnostic::Severity::Error,
                        "system '" + sys.name +
                            "' must declare all of A, B, and C",
                        close.span});
    }
    return sys;
  }

  EndpointRef parse_endpoint() {
    EndpointRef ep;
    const Token box = expect(TokenKind::Ident, "endpoint 'Box.port'");
    ep.box = box.text;
    ep.span = box.span;
    expect(TokenKind::Dot, "'.'");
    ep.port = expect(TokenKind::Ident, "port name").text;
    return ep;
  }

  DiagramDecl parse_diagram() {
    DiagramDecl diag;
    const Token name = expect(TokenKind::Ident, "diagram name");
    diag.name = name.text;
    diag.span = name.span;
    expect(TokenKind::Colon, "':'");
    diag.domain.push_back(expect(TokenKind::Ident, "domain box name").text);
    while (at(TokenKind::Tensor)) {
      next();
      diag.domain.push_back(expect(TokenKind::Ident, "domain box name").text);
    }
    expect(TokenKind::Arrow, "'->'");
    diag.codomain = expect(TokenKind::Ident, "codomain box name").text;
    expect(TokenKind::LBrace, "'{'");
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      if (at_keyword("wire")) {
        const Token kw = next();
        WireDecl wire;
        wire.span = kw.span;
        wire.src = parse_endpoint();
        expect(TokenKind::Arrow, "'->'");
        wire.dst = parse_endpoint();
        expect(TokenKind::Semi, "';'");
        diag.wires.push_back(std::move(wire));
      } else if (at_keyword("map")) {
        const Token kw = next();
        MapDecl map;
        map.span = kw.span;
        map.src = parse_endpoint();
        expect(TokenKind::Arrow, "'->'");
        map.dst = parse_endpoint();
        map.block = parse_matrix();
        expect(TokenKind::Semi, "';'");
        diag.maps.push_back(std::move(map));
      } else {
        fail("expected 'wire' or 'map'", peek().span);
      }
    }
    expect(TokenKind::RBrace, "'}'");
    return diag;
  }

  std::vector<ImplementDecl::Child> parse_children() {
    std::vector<ImplementDecl::Child> children;
    while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
      expect_keyword("child");
      ImplementDecl::Child child;
      const Token box = expect(TokenKind::Ident, "child box name");
      child.box_name = box.text;
      child.span = box.span;
      expect_keyword("by");
      child.diagram_name = expect(TokenKind::Ident, "diagram name").text;
      if (at(TokenKind::LBrace)) {
        next();
        child.children = parse_children();
        expect(TokenKind::RBrace, "'}'");
      } else {
        expect(TokenKind::Semi, "';'");
      }
      children.push_back(std::move(child));
    }
    return children;
  }

  ImplementDecl parse_implement() {
    ImplementDecl impl;
    const Token box = expect(TokenKind::Ident, "box name");
    impl.box_name = box.text;
    impl.span = box.span;
    expect_keyword("by");
    impl.diagram_name = expect(TokenKind::Ident, "diagram name").text;
    expect(TokenKind::LBrace, "'{'");
    impl.children = parse_children();
    expect(TokenKind::RBrace, "'}'");
    return impl;
  }

  SimulateDirective parse_simulate() {
    SimulateDirective sim;
    const Token name = expect(TokenKind::Ident, "system name");
    sim.system = name.text;
    sim.span = name.span;
    expect_keyword("steps");
    sim.steps = expect_nonneg_int("step count");
    expect_keyword("s0");
    sim.s0 = parse_number_list();
    expect_keyword("inputs");
    if (at_keyword("constant")) {
      next();
      sim.constant_input = true;
      MatrixLit lit;
      lit.span = peek().span;
      lit.rows.push_back(parse_number_list());
      sim.input = std::move(lit);
    } else {
      sim.constant_input = false;
      sim.input = parse_matrix();
    }
    expect(TokenKind::Semi, "';'");
    return sim;
  }

  std::vector<std::string> parse_ident_list() {
    std::vector<std::string> names;
    names.push_back(expect(TokenKind::Ident, "name").text);
    while (at(TokenKind::Comma)) {
      next();
      names.push_back(expect(TokenKind::Ident, "name").text);
    }
    return names;
  }

  CheckDirective parse_check() {
    CheckDirective chk;
    const Token name = expect(TokenKind::Ident, "diagram name");
    chk.diagram = name.text;
    chk.span = name.span;
    expect_keyword("systems");
    chk.systems = parse_ident_list();
    expect_keyword("target");
    chk.target = expect(TokenKind::Ident, "target system name").text;
    if (at_keyword("tol")) {
      next();
      chk.tol = expect(TokenKind::Number, "tolerance").number;
    }
    expect(TokenKind::Semi, "';'");
    return chk;
  }

  SolveDirective parse_solve() {
    SolveDirective slv;
    const Token name = expect(TokenKind::Ident, "system name");
    slv.system = name.text;
    slv.span = name.span;
    expect_keyword("partition");
    expect(TokenKind::LBracket, "'['");
    while (!at(TokenKind::RBracket)) {
      slv.partition.push_back(expect_nonneg_int("partition entry"));
      if (at(TokenKind::Comma)) next();
    }
    expect(TokenKind::RBracket, "']'");
    if (at_keyword("tol")) {
      next();
      slv.tol = expect(TokenKind::Number, "tolerance").number;
    }
    expect(TokenKind::Semi, "';'");
    return slv;
  }

  std::vector<Token> tokens_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  auto tokens = lex(text, result.diagnostics);
  Parser parser(std::move(tokens), result.diagnostics);
  result.model = parser.parse_model();
  return result;
}

std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
  const char* sev =
      d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  return file + ":" + std::to_string(d.span.line) + ":" +
         std::to_string(d.span.col) + ": " + sev + ": " + d.message;
}

}  // namespace wirecomp::dsl
