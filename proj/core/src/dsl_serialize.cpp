#include <charconv>
#include <sstream>

#include "dsl_internal.hpp"

namespace wirecomp::dsl {

namespace {

// Shortest round-trip representation.
std::string fmt_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt_space(std::size_t dim) {
  return dim == 1 ? "R" : "R^" + std::to_string(dim);
}

void write_number_list(std::ostream& os, const std::vector<double>& row) {
  os << "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ", ";
    os << fmt_number(row[i]);
  }
  os << "]";
}

void write_matrix(std::ostream& os, const MatrixLit& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (i) os << ", ";
    write_number_list(os, m.rows[i]);
  }
  os << "]";
}

void write_box(std::ostream& os, const BoxDecl& box) {
  os << "box " << box.name << " {\n";
  for (const auto& p : box.inputs)
    os << "  in " << p.name << ": " << fmt_space(p.dim) << ";\n";
  for (const auto& p : box.outputs)
    os << "  out " << p.name << ": " << fmt_space(p.dim) << ";\n";
  os << "}\n";
}

void write_system(std::ostream& os, const SystemDecl& sys) {
  os << "system " << sys.name << " on " << sys.box_name << " {\n";
  os << "  state " << sys.state_dim << ";\n";
  os << "  A = "; write_matrix(os, sys.a); os << ";\n";
  os << "  B = "; write_matrix(os, sys.b); os << ";\n";
  os << "  C = "; write_matrix(os, sys.c); os << ";\n";
  os << "}\n";
}

void write_diagram(std::ostream& os, const DiagramDecl& d) {
  os << "diagram " << d.name << " : ";
  for (std::size_t i = 0; i < d.domain.size(); ++i) {
    if (i) os << " (*) ";
    os << d.domain[i];
  }
  os << " -> " << d.codomain << " {\n";
  for (const auto& w : d.wires) {
    os << "  wire " << w.src.box << "." << w.src.port << " -> " << w.dst.box
       << "." << w.dst.port << ";\n";
  }
  for (const auto& m : d.maps) {
    os << "  map " << m.src.box << "." << m.src.port << " -> " << m.dst.box
       << "." << m.dst.port << " ";
    write_matrix(os, m.block);
    os << ";\n";
  }
  os << "}\n";
}

void write_children(std::ostream& os, const std::vector<ImplementDecl::Child>& cs,
                    int indent) {
  const std::string pad(indent, ' ');
  for (const auto& c : cs) {
    os << pad << "child " << c.box_name << " by " << c.diagram_name;
    if (c.children.empty()) {
      os << ";\n";
    } else {
      os << " {\n";
      write_children(os, c.children, indent + 2);
      os << pad << "}\n";
    }
  }
}

void write_implement(std::ostream& os, const ImplementDecl& impl) {
  os << "implement " << impl.box_name << " by " << impl.diagram_name << " {\n";
  write_children(os, impl.children, 2);
  os << "}\n";
}

void write_directive(std::ostream& os, const Directive& dir) {
  if (const auto* sim = std::get_if<SimulateDirective>(&dir)) {
    os << "simulate " << sim->system << " steps " << sim->steps << " s0 ";
    write_number_list(os, sim->s0);
    os << " inputs ";
    if (sim->constant_input) {
      os << "constant ";
      write_number_list(os, sim->input.rows.empty() ? std::vector<double>{}
                                                    : sim->input.rows.front());
    } else {
      write_matrix(os, sim->input);
    }
    os << ";\n";
  } else if (const auto* chk = std::get_if<CheckDirective>(&dir)) {
    os << "check " << chk->diagram << " systems ";
    for (std::size_t i = 0; i < chk->systems.size(); ++i) {
      if (i) os << ", ";
      os << chk->systems[i];
    }
    os << " target " << chk->target;
    if (chk->tol) os << " tol " << fmt_number(*chk->tol);
    os << ";\n";
  } else if (const auto* slv = std::get_if<SolveDirective>(&dir)) {
    os << "solve " << slv->system << " partition [";
    for (std::size_t i = 0; i < slv->partition.size(); ++i) {
      if (i) os << ", ";
      os << slv->partition[i];
    }
    os << "]";
    if (slv->tol) os << " tol " << fmt_number(*slv->tol);
    os << ";\n";
  }
}

}  // namespace

std::string serialize(const ModelFile& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& decl : m.declarations) {
    if (!first) os << "\n";
    first = false;
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, BoxDecl>) write_box(os, d);
          else if constexpr (std::is_same_v<T, SystemDecl>) write_system(os, d);
          else if constexpr (std::is_same_v<T, DiagramDecl>) write_diagram(os, d);
          else if constexpr (std::is_same_v<T, ImplementDecl>) write_implement(os, d);
          else write_directive(os, d);
        },
        decl);
  }
  return os.str();
}

namespace {

bool eq(const EndpointRef& a, const EndpointRef& b) {
  return a.box == b.box && a.port == b.port;
}

bool eq(const MatrixLit& a, const MatrixLit& b) { return a.rows == b.rows; }

bool eq(const BoxDecl& a, const BoxDecl& b) {
  auto ports_eq = [](const std::vector<PortDecl>& x,
                     const std::vector<PortDecl>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].name != y[i].name || x[i].dim != y[i].dim) return false;
    return true;
  };
  return a.name == b.name && ports_eq(a.inputs, b.inputs) &&
         ports_eq(a.outputs, b.outputs);
}

bool eq(const SystemDecl& a, const SystemDecl& b) {
  return a.name == b.name && a.box_name == b.box_name &&
         a.state_dim == b.state_dim && eq(a.a, b.a) && eq(a.b, b.b) &&
         eq(a.c, b.c);
}

bool eq(const DiagramDecl& a, const DiagramDecl& b) {
  if (a.name != b.name || a.domain != b.domain || a.codomain != b.codomain ||
      a.wires.size() != b.wires.size() || a.maps.size() != b.maps.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.wires.size(); ++i)
    if (!eq(a.wires[i].src, b.wires[i].src) || !eq(a.wires[i].dst, b.wires[i].dst))
      return false;
  for (std::size_t i = 0; i < a.maps.size(); ++i)
    if (!eq(a.maps[i].src, b.maps[i].src) || !eq(a.maps[i].dst, b.maps[i].dst) ||
        !eq(a.maps[i].block, b.maps[i].block))
      return false;
  return true;
}

bool eq(const std::vector<ImplementDecl::Child>& a,
        const std::vector<ImplementDecl::Child>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].box_name != b[i].box_name ||
        a[i].diagram_name != b[i].diagram_name ||
        !eq(a[i].children, b[i].children)) {
      return false;
    }
  }
  return true;
}

bool eq(const ImplementDecl& a, const ImplementDecl& b) {
  return a.box_name == b.box_name && a.diagram_name == b.diagram_name &&
         eq(a.children, b.children);
}

bool eq(const Directive& a, const Directive& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<SimulateDirective>(&a)) {
    const auto& y = std::get<SimulateDirective>(b);
    return x->system == y.system && x->steps == y.steps && x->s0 == y.s0 &&
           x->constant_input == y.constant_input && eq(x->input, y.input);
  }
  if (const auto* x = std::get_if<CheckDirective>(&a)) {
    const auto& y = std::get<CheckDirective>(b);
    return x->diagram == y.diagram && x->systems == y.systems &&
           x->target == y.target && x->tol == y.tol;
  }
  const auto& x = std::get<SolveDirective>(a);
  const auto& y = std::get<SolveDirective>(b);
  return x.system == y.system && x.partition == y.partition && x.tol == y.tol;
}

}  // namespace

bool structurally_equal(const ModelFile& a, const ModelFile& b) {
  if (a.declarations.size() != b.declarations.size()) return false;
  for (std::size_t i = 0; i < a.declarations.size(); ++i) {
    const auto& da = a.declarations[i];
    const auto& db = b.declarations[i];
    if (da.index() != db.index()) return false;
    const bool same = std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return eq(x, std::get<T>(db));
        },
        da);
    if (!same) return false;
  }
  return true;
}

}  // namespace wirecomp::dsl
