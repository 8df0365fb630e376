#include "wirecomp/diagram.hpp"

#include <cmath>
#include <utility>

namespace wirecomp {

namespace {

std::string shape_msg(const char* which, std::size_t er, std::size_t ec,
                      const Matrix& got) {
  return std::string(which) + " must be " + std::to_string(er) + "x" +
         std::to_string(ec) + ", got " + got.shape_str();
}

struct PortBlock {
  std::size_t factor;
  std::string box;
  std::string port;
  std::size_t offset;
  std::size_t dim;
};

std::vector<PortBlock> input_blocks(std::span<const Box> factors) {
  std::vector<PortBlock> blocks;
  std::size_t off = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    for (const auto& p : factors[f].inputs) {
      blocks.push_back({f, factors[f].name, p.name, off, p.dim});
      off += p.dim;
    }
  }
  return blocks;
}

std::vector<PortBlock> output_blocks(std::span<const Box> factors) {
  std::vector<PortBlock> blocks;
  std::size_t off = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    for (const auto& p : factors[f].outputs) {
      blocks.push_back({f, factors[f].name, p.name, off, p.dim});
      off += p.dim;
    }
  }
  return blocks;
}

}  // namespace

WiringDiagram WiringDiagram::make(std::vector<Box> domain_factors, Box codomain,
                                  Matrix a_f, Matrix b_f, Matrix c_f) {
  WiringDiagram d{std::move(domain_factors), std::move(codomain),
                  std::move(a_f), std::move(b_f), std::move(c_f)};
  const Box dom = d.domain();
  if (d.a_f.rows() != dom.total_in() || d.a_f.cols() != dom.total_out()) {
    throw DimensionError(shape_msg("a_f", dom.total_in(), dom.total_out(), d.a_f));
  }
  if (d.b_f.rows() != dom.total_in() || d.b_f.cols() != d.codomain.total_in()) {
    throw DimensionError(
        shape_msg("b_f", dom.total_in(), d.codomain.total_in(), d.b_f));
  }
  if (d.c_f.rows() != d.codomain.total_out() || d.c_f.cols() != dom.total_out()) {
    throw DimensionError(
        shape_msg("c_f", d.codomain.total_out(), dom.total_out(), d.c_f));
  }
  return d;
}

WiringDiagram identity_diagram(const Box& x) {
  return WiringDiagram::make(
      {x}, x, Matrix::zeros(x.total_in(), x.total_out()),
      Matrix::identity(x.total_in()), Matrix::identity(x.total_out()));
}

WiringDiagram compose_diagrams(const WiringDiagram& g, const WiringDiagram& f) {
  if (!same_interface(g.codomain, f.domain())) {
    throw BoundaryError("cannot compose: codomain of '" + g.codomain.name +
                        "' does not match domain of diagram into '" +
                        f.codomain.name + "'");
  }
  return WiringDiagram::make(
      g.domain_factors, f.codomain,
      g.a_f + g.b_f * f.a_f * g.c_f,
      g.b_f * f.b_f,
      f.c_f * g.c_f);
}

WiringDiagram tensor_diagrams(std::span<const WiringDiagram> fs) {
  if (fs.size() == 1) return fs.front();
  std::vector<Box> dom_factors;
  std::vector<Box> cod_factors;
  std::vector<Matrix> as, bs, cs;
  for (const auto& d : fs) {
    dom_factors.insert(dom_factors.end(), d.domain_factors.begin(),
                       d.domain_factors.end());
    cod_factors.push_back(d.codomain);
    as.push_back(d.a_f);
    bs.push_back(d.b_f);
    cs.push_back(d.c_f);
  }
  return WiringDiagram::make(std::move(dom_factors), tensor_boxes(cod_factors),
                             block_diag(as), block_diag(bs), block_diag(cs));
}

WiringDiagram tensor_diagrams(std::initializer_list<WiringDiagram> fs) {
  return tensor_diagrams(std::span<const WiringDiagram>(fs.begin(), fs.size()));
}

std::vector<std::string> validate(const WiringDiagram& d, bool strict) {
  std::vector<std::string> violations;
  for (const auto& b : d.domain_factors) {
    auto v = validate_box(b);
    violations.insert(violations.end(), v.begin(), v.end());
  }
  auto v = validate_box(d.codomain);
  violations.insert(violations.end(), v.begin(), v.end());

  const Box dom = d.domain();
  auto check_shape = [&](const Matrix& m, std::size_t er, std::size_t ec,
                         const char* which) {
    if (m.rows() != er || m.cols() != ec) {
      violations.push_back(shape_msg(which, er, ec, m));
    }
  };
  check_shape(d.a_f, dom.total_in(), dom.total_out(), "a_f");
  check_shape(d.b_f, dom.total_in(), d.codomain.total_in(), "b_f");
  check_shape(d.c_f, d.codomain.total_out(), dom.total_out(), "c_f");
  if (!violations.empty()) return violations;

  if (strict) {
    for (std::size_t r = 0; r < dom.total_in(); ++r) {
      std::size_t nonzero = 0;
      for (std::size_t c = 0; c < d.a_f.cols(); ++c)
        if (d.a_f(r, c) != 0.0) ++nonzero;
      for (std::size_t c = 0; c < d.b_f.cols(); ++c)
        if (d.b_f(r, c) != 0.0) ++nonzero;
      if (nonzero > 1) {
        violations.push_back("strict routing: inner-input row " +
                             std::to_string(r) + " is fed by " +
                             std::to_string(nonzero) + " sources");
      }
    }
  }
  return violations;
}

namespace {

// Emit one WireView per nonzero block. A block equal to w*I is a single wire
// of weight w; anything else is reported entrywise.
void emit_block_wires(const Matrix& m, const std::vector<PortBlock>& row_blocks,
                      const std::vector<PortBlock>& col_blocks,
                      WireView::EndpointKind row_kind,
                      WireView::EndpointKind col_kind,
                      std::vector<WireView>& out) {
  for (const auto& rb : row_blocks) {
    for (const auto& cb : col_blocks) {
      bool nonzero = false;
      bool scaled_identity = rb.dim == cb.dim;
      double scale = m(rb.offset, cb.offset);
      for (std::size_t i = 0; i < rb.dim; ++i) {
        for (std::size_t j = 0; j < cb.dim; ++j) {
          const double v = m(rb.offset + i, cb.offset + j);
          if (v != 0.0) nonzero = true;
          if (scaled_identity && v != (i == j ? scale : 0.0)) {
            scaled_identity = false;
          }
        }
      }
      if (!nonzero) continue;
      WireView::Endpoint src{col_kind, cb.factor, cb.box, cb.port, cb.dim};
      WireView::Endpoint dst{row_kind, rb.factor, rb.box, rb.port, rb.dim};
      if (scaled_identity) {
        out.push_back({src, dst, scale});
      } else {
        for (std::size_t i = 0; i < rb.dim; ++i) {
          for (std::size_t j = 0; j < cb.dim; ++j) {
            const double v = m(rb.offset + i, cb.offset + j);
            if (v == 0.0) continue;
            WireView::Endpoint s = src, t = dst;
            s.port += "[" + std::to_string(j) + "]";
            t.port += "[" + std::to_string(i) + "]";
            s.dim = t.dim = 1;
            out.push_back({s, t, v});
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<WireView> enumerate_wires(const WiringDiagram& d) {
  using K = WireView::EndpointKind;
  std::vector<WireView> out;
  const auto in_blocks = input_blocks(d.domain_factors);
  const auto out_blocks = output_blocks(d.domain_factors);
  const std::vector<Box> cod{d.codomain};
  const auto outer_in = input_blocks(cod);
  const auto outer_out = output_blocks(cod);
  emit_block_wires(d.a_f, in_blocks, out_blocks, K::InnerInput, K::InnerOutput, out);
  emit_block_wires(d.b_f, in_blocks, outer_in, K::InnerInput, K::OuterInput, out);
  emit_block_wires(d.c_f, outer_out, out_blocks, K::OuterOutput, K::InnerOutput, out);
  return out;
}

}  // namespace wirecomp
