#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dsl_internal.hpp"

namespace wirecomp::dsl {

bool CompileResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Diagnostic::Severity::Error) return false;
  return true;
}

namespace {

class Compiler {
 public:
  explicit Compiler(const ModelFile& file) : file_(file) {}

  CompileResult run() {
    index_declarations();
    compile_boxes();
    compile_systems();
    compile_diagrams();
    compile_implementations();
    compile_directives();
    return std::move(result_);
  }

 private:
  void error(const std::string& msg, const SourceSpan& span) {
    result_.diagnostics.push_back({Diagnostic::Severity::Error, msg, span});
  }
  void warn(const std::string& msg, const SourceSpan& span) {
    result_.diagnostics.push_back({Diagnostic::Severity::Warning, msg, span});
  }

  template <typename T>
  void index(std::map<std::string, const T*>& table, const T& decl,
             const std::string& name, const char* kind) {
    if (!table.emplace(name, &decl).second) {
      error(std::string("duplicate ") + kind + " name '" + name + "'",
            decl.span);
    }
  }

  void index_declarations() {
    for (const auto& decl : file_.declarations) {
      if (const auto* b = std::get_if<BoxDecl>(&decl)) {
        index(box_decls_, *b, b->name, "box");
      } else if (const auto* s = std::get_if<SystemDecl>(&decl)) {
        index(system_decls_, *s, s->name, "system");
      } else if (const auto* d = std::get_if<DiagramDecl>(&decl)) {
        index(diagram_decls_, *d, d->name, "diagram");
      } else if (const auto* i = std::get_if<ImplementDecl>(&decl)) {
        index(implement_decls_, *i, i->box_name, "implementation");
      }
    }
  }

  void compile_boxes() {
    for (const auto& [name, decl] : box_decls_) {
      Box box;
      box.name = name;
      for (const auto& p : decl->inputs) box.inputs.push_back({p.name, p.dim});
      for (const auto& p : decl->outputs) box.outputs.push_back({p.name, p.dim});
      for (const auto& violation : validate_box(box)) {
        error(violation, decl->span);
      }
      result_.model.boxes.emplace(name, std::move(box));
    }
  }

  const Box* lookup_box(const std::string& name, const SourceSpan& span) {
    const auto it = result_.model.boxes.find(name);
    if (it == result_.model.boxes.end()) {
      error("unresolved box reference '" + name + "'", span);
      return nullptr;
    }
    return &it->second;
  }

  std::optional<Matrix> lower_matrix(const MatrixLit& lit, std::size_t rows,
                                     std::size_t cols, const std::string& what) {
    std::size_t got_rows = lit.rows.size();
    std::size_t got_cols = got_rows == 0 ? 0 : lit.rows.front().size();
    // [] and [[], []] leave one dimension implicit.
    if (got_rows == 0) got_cols = cols;
    if (got_cols == 0 && cols == 0) got_cols = 0;
    if (got_rows != rows || got_cols != cols) {
      error(what + " must be " + std::to_string(rows) + "x" +
                std::to_string(cols) + ", got " + std::to_string(got_rows) +
                "x" + std::to_string(lit.rows.empty() ? 0 : lit.rows.front().size()),
            lit.span);
      return std::nullopt;
    }
    std::vector<double> entries;
    entries.reserve(rows * cols);
    for (const auto& row : lit.rows)
      entries.insert(entries.end(), row.begin(), row.end());
    return Matrix(rows, cols, std::move(entries));
  }

  void compile_systems() {
    for (const auto& [name, decl] : system_decls_) {
      const Box* box = lookup_box(decl->box_name, decl->span);
      if (!box) continue;
      const std::size_t n = decl->state_dim;
      auto a = lower_matrix(decl->a, n, n, "system '" + name + "' matrix A");
      auto b = lower_matrix(decl->b, n, box->total_in(),
                            "system '" + name + "' matrix B");
      auto c = lower_matrix(decl->c, box->total_out(), n,
                            "system '" + name + "' matrix C");
      if (!a || !b || !c) continue;
      result_.model.systems.emplace(
          name, LinSystem::make(*box, std::move(*a), std::move(*b),
                                std::move(*c)));
    }
  }

  // Endpoint resolution inside one diagram declaration.
  struct ResolvedEndpoint {
    enum class Kind { OuterInput, OuterOutput, InnerInput, InnerOutput };
    Kind kind;
    std::size_t offset = 0;  // into the corresponding stacked vector
    std::size_t dim = 0;
  };

  std::optional<ResolvedEndpoint> resolve_endpoint(
      const DiagramDecl& decl, const std::vector<const Box*>& factors,
      const Box& codomain, const EndpointRef& ep) {
    auto find_port = [](const std::vector<Port>& ports, const std::string& name,
                        std::size_t* offset, std::size_t* dim) {
      std::size_t off = 0;
      for (const auto& p : ports) {
        if (p.name == name) {
          *offset = off;
          *dim = p.dim;
          return true;
        }
        off += p.dim;
      }
      return false;
    };

    if (ep.box == codomain.name) {
      std::size_t off = 0, dim = 0;
      if (find_port(codomain.inputs, ep.port, &off, &dim)) {
        return ResolvedEndpoint{ResolvedEndpoint::Kind::OuterInput, off, dim};
      }
      if (find_port(codomain.outputs, ep.port, &off, &dim)) {
        return ResolvedEndpoint{ResolvedEndpoint::Kind::OuterOutput, off, dim};
      }
      error("box '" + ep.box + "' has no port '" + ep.port + "'", ep.span);
      return std::nullopt;
    }

    std::size_t match_count = 0, match_index = 0;
    for (std::size_t i = 0; i < decl.domain.size(); ++i) {
      if (decl.domain[i] == ep.box) {
        ++match_count;
        match_index = i;
      }
    }
    if (match_count == 0) {
      error("'" + ep.box + "' is neither a domain factor nor the codomain of "
            "diagram '" + decl.name + "'",
            ep.span);
      return std::nullopt;
    }
    if (match_count > 1) {
      error("ambiguous reference: box '" + ep.box +
                "' appears more than once in the domain of diagram '" +
                decl.name + "'",
            ep.span);
      return std::nullopt;
    }
    // Stacked offsets across all factors.
    std::size_t in_base = 0, out_base = 0;
    for (std::size_t i = 0; i < match_index; ++i) {
      in_base += factors[i]->total_in();
      out_base += factors[i]->total_out();
    }
    std::size_t off = 0, dim = 0;
    if (find_port(factors[match_index]->inputs, ep.port, &off, &dim)) {
      return ResolvedEndpoint{ResolvedEndpoint::Kind::InnerInput, in_base + off,
                              dim};
    }
    if (find_port(factors[match_index]->outputs, ep.port, &off, &dim)) {
      return ResolvedEndpoint{ResolvedEndpoint::Kind::InnerOutput,
                              out_base + off, dim};
    }
    error("box '" + ep.box + "' has no port '" + ep.port + "'", ep.span);
    return std::nullopt;
  }

  void compile_diagrams() {
    for (const auto& [name, decl] : diagram_decls_) {
      std::vector<const Box*> factors;
      bool resolved = true;
      for (const auto& factor_name : decl->domain) {
        const Box* b = lookup_box(factor_name, decl->span);
        if (!b) resolved = false;
        factors.push_back(b);
      }
      const Box* codomain = lookup_box(decl->codomain, decl->span);
      if (!resolved || !codomain) continue;

      std::size_t total_in = 0, total_out = 0;
      std::vector<Box> factor_boxes;
      for (const Box* f : factors) {
        total_in += f->total_in();
        total_out += f->total_out();
        factor_boxes.push_back(*f);
      }
      Matrix a_f(total_in, total_out);
      Matrix b_f(total_in, codomain->total_in());
      Matrix c_f(codomain->total_out(), total_out);

      // Routing-mode fan-in bookkeeping: scalar target rows driven by wires.
      std::vector<int> inner_in_driven(total_in, 0);
      std::vector<int> outer_out_driven(codomain->total_out(), 0);

      bool diagram_ok = true;
      auto set_identity_block = [](Matrix& m, std::size_t r0, std::size_t c0,
                                   std::size_t dim) {
        for (std::size_t i = 0; i < dim; ++i) m.set(r0 + i, c0 + i, 1.0);
      };

      for (const auto& wire : decl->wires) {
        auto src = resolve_endpoint(*decl, factors, *codomain, wire.src);
        auto dst = resolve_endpoint(*decl, factors, *codomain, wire.dst);
        if (!src || !dst) {
          diagram_ok = false;
          continue;
        }
        using K = ResolvedEndpoint::Kind;
        if (src->kind == K::OuterInput && dst->kind == K::OuterOutput) {
          error("no passthrough in wiring-diagram morphisms: an outer input "
                "cannot be wired to an outer output (outer outputs are "
                "functions of inner outputs only)",
                wire.span);
          diagram_ok = false;
          continue;
        }
        if (src->kind != K::OuterInput && src->kind != K::InnerOutput) {
          error("wire source must be an outer input or an inner output",
                wire.src.span);
          diagram_ok = false;
          continue;
        }
        if (dst->kind != K::InnerInput && dst->kind != K::OuterOutput) {
          error("wire target must be an inner input or an outer output",
                wire.dst.span);
          diagram_ok = false;
          continue;
        }
        if (src->dim != dst->dim) {
          error("wire dimension mismatch: '" + wire.src.box + "." +
                    wire.src.port + "' has dimension " +
                    std::to_string(src->dim) + " but '" + wire.dst.box + "." +
                    wire.dst.port + "' has dimension " +
                    std::to_string(dst->dim),
                wire.span);
          diagram_ok = false;
          continue;
        }
        if (dst->kind == K::InnerInput) {
          for (std::size_t i = 0; i < dst->dim; ++i) {
            if (inner_in_driven[dst->offset + i]++) {
              error("fan-in: inner input '" + wire.dst.box + "." +
                        wire.dst.port + "' is driven by more than one source",
                    wire.span);
              diagram_ok = false;
              break;
            }
          }
          if (!diagram_ok) continue;
          if (src->kind == K::InnerOutput) {
            set_identity_block(a_f, dst->offset, src->offset, dst->dim);
          } else {
            set_identity_block(b_f, dst->offset, src->offset, dst->dim);
          }
        } else {  // OuterOutput; source must be an inner output here
          for (std::size_t i = 0; i < dst->dim; ++i) {
            if (outer_out_driven[dst->offset + i]++) {
              error("fan-in: outer output '" + wire.dst.box + "." +
                        wire.dst.port + "' is driven by more than one source",
                    wire.span);
              diagram_ok = false;
              break;
            }
          }
          if (!diagram_ok) continue;
          set_identity_block(c_f, dst->offset, src->offset, dst->dim);
        }
      }

      for (const auto& map_entry : decl->maps) {
        auto src = resolve_endpoint(*decl, factors, *codomain, map_entry.src);
        auto dst = resolve_endpoint(*decl, factors, *codomain, map_entry.dst);
        if (!src || !dst) {
          diagram_ok = false;
          continue;
        }
        using K = ResolvedEndpoint::Kind;
        if (src->kind == K::OuterInput && dst->kind == K::OuterOutput) {
          error("no passthrough in wiring-diagram morphisms: an outer input "
                "cannot be mapped to an outer output",
                map_entry.span);
          diagram_ok = false;
          continue;
        }
        if ((src->kind != K::OuterInput && src->kind != K::InnerOutput) ||
            (dst->kind != K::InnerInput && dst->kind != K::OuterOutput)) {
          error("map must go from an outer input or inner output to an inner "
                "input or outer output",
                map_entry.span);
          diagram_ok = false;
          continue;
        }
        auto block = lower_matrix(map_entry.block, dst->dim, src->dim,
                                  "map block for '" + map_entry.dst.box + "." +
                                      map_entry.dst.port + "'");
        if (!block) {
          diagram_ok = false;
          continue;
        }
        Matrix* target = nullptr;
        if (dst->kind == K::InnerInput) {
          target = src->kind == K::InnerOutput ? &a_f : &b_f;
        } else {
          target = &c_f;
        }
        for (std::size_t i = 0; i < dst->dim; ++i)
          for (std::size_t j = 0; j < src->dim; ++j)
            target->set(dst->offset + i, src->offset + j,
                        (*target)(dst->offset + i, src->offset + j) +
                            (*block)(i, j));
      }

      if (!diagram_ok) continue;

      // Unwired inner inputs are allowed (zero rows) but worth flagging.
      {
        std::size_t row = 0;
        for (std::size_t fi = 0; fi < factor_boxes.size(); ++fi) {
          for (const auto& p : factor_boxes[fi].inputs) {
            bool driven = false;
            for (std::size_t i = 0; i < p.dim; ++i) {
              for (std::size_t c = 0; c < a_f.cols() && !driven; ++c)
                if (a_f(row + i, c) != 0.0) driven = true;
              for (std::size_t c = 0; c < b_f.cols() && !driven; ++c)
                if (b_f(row + i, c) != 0.0) driven = true;
            }
            if (!driven) {
              warn("inner input '" + factor_boxes[fi].name + "." + p.name +
                       "' of diagram '" + name + "' is unwired (zero input)",
                   decl->span);
            }
            row += p.dim;
          }
        }
      }

      result_.model.diagrams.emplace(
          name, WiringDiagram::make(std::move(factor_boxes), *codomain,
                                    std::move(a_f), std::move(b_f),
                                    std::move(c_f)));
    }
  }

  std::optional<Decomposition> build_tree(
      const std::string& box_name, const std::string& diagram_name,
      const std::vector<ImplementDecl::Child>& children,
      const SourceSpan& span) {
    const auto decl_it = diagram_decls_.find(diagram_name);
    const auto diag_it = result_.model.diagrams.find(diagram_name);
    if (decl_it == diagram_decls_.end() || diag_it == result_.model.diagrams.end()) {
      error("unresolved diagram reference '" + diagram_name + "'", span);
      return std::nullopt;
    }
    const DiagramDecl& decl = *decl_it->second;
    const WiringDiagram& diagram = diag_it->second;
    if (decl.codomain != box_name) {
      error("diagram '" + diagram_name + "' implements box '" + decl.codomain +
                "', not '" + box_name + "'",
            span);
      return std::nullopt;
    }

    std::set<std::size_t> used;
    std::vector<std::variant<Box, Decomposition>> nodes;
    bool ok = true;
    for (std::size_t i = 0; i < decl.domain.size(); ++i) {
      const ImplementDecl::Child* match = nullptr;
      for (const auto& child : children) {
        if (child.box_name != decl.domain[i]) continue;
        const std::size_t factor_count =
            std::count(decl.domain.begin(), decl.domain.end(), child.box_name);
        if (factor_count > 1) {
          error("ambiguous child: box '" + child.box_name +
                    "' appears more than once in the domain of diagram '" +
                    diagram_name + "'",
                child.span);
          ok = false;
        }
        match = &child;
        used.insert(&child - children.data());
        break;
      }
      if (match) {
        auto sub = build_tree(match->box_name, match->diagram_name,
                              match->children, match->span);
        if (!sub) {
          ok = false;
          nodes.emplace_back(diagram.domain_factors[i]);
        } else {
          nodes.emplace_back(std::move(*sub));
        }
      } else {
        nodes.emplace_back(diagram.domain_factors[i]);
      }
    }
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (!used.count(i)) {
        error("child '" + children[i].box_name +
                  "' is not a domain factor of diagram '" + diagram_name + "'",
              children[i].span);
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return Decomposition::make(diagram, std::move(nodes));
  }

  void compile_implementations() {
    for (const auto& [box_name, decl] : implement_decls_) {
      if (!lookup_box(box_name, decl->span)) continue;
      auto tree = build_tree(box_name, decl->diagram_name, decl->children,
                             decl->span);
      if (tree) {
        result_.model.implementations.emplace(box_name, std::move(*tree));
      }
    }
  }

  void compile_directives() {
    for (const auto& decl : file_.declarations) {
      const auto* dir = std::get_if<Directive>(&decl);
      if (!dir) continue;
      bool ok = true;
      auto need_system = [&](const std::string& name, const SourceSpan& span)
          -> const LinSystem* {
        const auto it = result_.model.systems.find(name);
        if (it == result_.model.systems.end()) {
          error("unresolved system reference '" + name + "'", span);
          ok = false;
          return nullptr;
        }
        return &it->second;
      };
      auto need_diagram = [&](const std::string& name, const SourceSpan& span) {
        if (!result_.model.diagrams.count(name)) {
          error("unresolved diagram reference '" + name + "'", span);
          ok = false;
        }
      };
      if (const auto* sim = std::get_if<SimulateDirective>(dir)) {
        const LinSystem* sys = need_system(sim->system, sim->span);
        if (sys) {
          if (sim->s0.size() != sys->state_dim()) {
            error("initial state has length " + std::to_string(sim->s0.size()) +
                      ", system '" + sim->system + "' has state dimension " +
                      std::to_string(sys->state_dim()),
                  sim->span);
            ok = false;
          }
          for (const auto& row : sim->input.rows) {
            if (row.size() != sys->box.total_in()) {
              error("input row has length " + std::to_string(row.size()) +
                        ", system '" + sim->system + "' expects " +
                        std::to_string(sys->box.total_in()),
                    sim->input.span);
              ok = false;
              break;
            }
          }
          if (!sim->constant_input && sim->input.rows.size() != sim->steps) {
            error("input sequence has " +
                      std::to_string(sim->input.rows.size()) + " rows for " +
                      std::to_string(sim->steps) + " steps",
                  sim->input.span);
            ok = false;
          }
        }
      } else if (const auto* chk = std::get_if<CheckDirective>(dir)) {
        need_diagram(chk->diagram, chk->span);
        for (const auto& s : chk->systems) need_system(s, chk->span);
        need_system(chk->target, chk->span);
        if (chk->tol && *chk->tol <= 0) {
          error("tolerance must be positive", chk->span);
          ok = false;
        }
      } else if (const auto* slv = std::get_if<SolveDirective>(dir)) {
        const LinSystem* sys = need_system(slv->system, slv->span);
        if (sys) {
          std::size_t total = 0;
          for (auto d : slv->partition) total += d;
          if (total != sys->state_dim()) {
            error("partition sums to " + std::to_string(total) +
                      " but system '" + slv->system + "' has state dimension " +
                      std::to_string(sys->state_dim()),
                  slv->span);
            ok = false;
          }
        }
        if (slv->tol && *slv->tol <= 0) {
          error("tolerance must be positive", slv->span);
          ok = false;
        }
      }
      if (ok) result_.model.directives.push_back(*dir);
    }
  }

  const ModelFile& file_;
  CompileResult result_;
  std::map<std::string, const BoxDecl*> box_decls_;
  std::map<std::string, const SystemDecl*> system_decls_;
  std::map<std::string, const DiagramDecl*> diagram_decls_;
  std::map<std::string, const ImplementDecl*> implement_decls_;
};

}  // namespace

CompileResult compile(const ModelFile& m) { return Compiler(m).run(); }

CompileResult load_model(const std::string& path, std::string* error) {
  CompileResult result;
  std::ifstream in(path);
  if (!in) {
    if (error) *error = "cannot open '" + path + "'";
    return result;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ParseResult parsed = parse(buf.str());
  if (!parsed.ok()) {
    result.diagnostics = std::move(parsed.diagnostics);
    return result;
  }
  result = compile(parsed.model);
  result.diagnostics.insert(result.diagnostics.begin(),
                            parsed.diagnostics.begin(),
                            parsed.diagnostics.end());
  return result;
}

}  // namespace wirecomp::dsl
