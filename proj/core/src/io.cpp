#include "wirecomp/io.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wirecomp {

using nlohmann::json;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const json& j) {
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  std::vector<double> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j.at("entries"))
    for (const auto& v : row) entries.push_back(v.get<double>());
  return Matrix(rows, cols, std::move(entries));
}

namespace {

json ports_to_json(const std::vector<Port>& ports) {
  json out = json::array();
  for (const auto& p : ports) out.push_back({{"name", p.name}, {"dim", p.dim}});
  return out;
}

}  // namespace

json to_json(const Box& b) {
  return json{{"name", b.name},
              {"inputs", ports_to_json(b.inputs)},
              {"outputs", ports_to_json(b.outputs)},
              {"total_in", b.total_in()},
              {"total_out", b.total_out()}};
}

json to_json(const LinSystem& s) {
  return json{{"box", to_json(s.box)},
              {"state_dim", s.state_dim()},
              {"A", to_json(s.a)},
              {"B", to_json(s.b)},
              {"C", to_json(s.c)}};
}

json to_json(const WiringDiagram& d) {
  json factors = json::array();
  for (const auto& b : d.domain_factors) factors.push_back(to_json(b));
  return json{{"domain_factors", std::move(factors)},
              {"codomain", to_json(d.codomain)},
              {"a_f", to_json(d.a_f)},
              {"b_f", to_json(d.b_f)},
              {"c_f", to_json(d.c_f)}};
}

json to_json(const MatchReport& r) {
  json diffs = json::array();
  for (const auto& d : r.diffs)
    diffs.push_back({{"block", d.name}, {"max_diff", d.max_diff}});
  json determined = json::array();
  for (const auto& b : r.determined)
    determined.push_back({{"name", b.name}, {"value", to_json(b.value)}});
  json products = json::array();
  for (const auto& b : r.product_constrained)
    products.push_back({{"name", b.name}, {"value", to_json(b.value)}});
  return json{{"verdict", r.pass ? "pass" : "fail"},
              {"diffs", std::move(diffs)},
              {"determined", std::move(determined)},
              {"product_constrained", std::move(products)},
              {"free", r.free_blocks},
              {"violations", r.violations}};
}

json to_json(const Trace& t) {
  return json{{"states", t.states}, {"outputs", t.outputs}, {"inputs", t.inputs}};
}

json to_json(const dsl::CompiledModel& m) {
  json boxes = json::object();
  for (const auto& [name, b] : m.boxes) boxes[name] = to_json(b);
  json systems = json::object();
  for (const auto& [name, s] : m.systems) systems[name] = to_json(s);
  json diagrams = json::object();
  for (const auto& [name, d] : m.diagrams) diagrams[name] = to_json(d);

  // Decomposition trees, recursively.
  std::function<json(const Decomposition&)> tree_json =
      [&](const Decomposition& t) -> json {
    json children = json::array();
    for (const auto& child : t.children) {
      if (const Box* b = std::get_if<Box>(&child)) {
        children.push_back({{"leaf", b->name}});
      } else {
        children.push_back(tree_json(std::get<Decomposition>(child)));
      }
    }
    return json{{"root", t.root().name},
                {"node", to_json(t.node)},
                {"children", std::move(children)}};
  };
  json impls = json::object();
  for (const auto& [name, t] : m.implementations) impls[name] = tree_json(t);

  return json{{"boxes", std::move(boxes)},
              {"systems", std::move(systems)},
              {"diagrams", std::move(diagrams)},
              {"implementations", std::move(impls)}};
}

namespace {

std::string fmt_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string trace_to_csv(const Trace& t) {
  std::ostringstream os;
  const std::size_t n = t.states.empty() ? 0 : t.states.front().size();
  const std::size_t m = t.outputs.empty() ? 0 : t.outputs.front().size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",s" << i;
  for (std::size_t i = 1; i <= m; ++i) os << ",y" << i;
  os << "\n";
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    os << k;
    for (double v : t.states[k]) os << "," << fmt_number(v);
    for (double v : t.outputs[k]) os << "," << fmt_number(v);
    os << "\n";
  }
  return os.str();
}

std::string matrix_to_text(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << fmt_number(m(i, j));
    }
    os << "]\n";
  }
  if (m.rows() == 0) os << "  []\n";
  return os.str();
}

std::string system_to_text(const LinSystem& s) {
  std::ostringstream os;
  os << "system on box '" << s.box.name << "' (in " << s.box.total_in()
     << ", out " << s.box.total_out() << ", state " << s.state_dim() << ")\n";
  os << "A =\n" << matrix_to_text(s.a);
  os << "B =\n" << matrix_to_text(s.b);
  os << "C =\n" << matrix_to_text(s.c);
  return os.str();
}

std::vector<std::vector<double>> inputs_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::size_t start = 0;
    bool numeric = true;
    while (start <= line.size()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::string cell = line.substr(start, end - start);
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
        cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        numeric = false;
        break;
      }
      row.push_back(v);
      if (end == line.size()) break;
      start = end + 1;
    }
    if (!numeric) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw ValueError("malformed CSV input line: '" + line + "'");
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wirecomp
