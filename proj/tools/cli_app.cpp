#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wirecomp/dot_export.hpp"
#include "wirecomp/dsl.hpp"
#include "wirecomp/io.hpp"

namespace wirecomp::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) {
    out.push_back(std::stod(part));
  }
  return out;
}

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

dsl::CompiledModel load_model_or_fail(const std::string& path,
                                      std::ostream& err) {
  std::string io_error;
  dsl::CompileResult result = dsl::load_model(path, &io_error);
  if (!io_error.empty()) throw Usage(io_error);
  for (const auto& d : result.diagnostics) {
    err << dsl::format_diagnostic(d, path) << "\n";
  }
  if (!result.ok()) throw Usage("model '" + path + "' has errors");
  return std::move(result.model);
}

const WiringDiagram& find_diagram(const dsl::CompiledModel& m,
                                  const std::string& name) {
  const auto it = m.diagrams.find(name);
  if (it == m.diagrams.end()) throw Usage("no diagram named '" + name + "'");
  return it->second;
}

const LinSystem& find_system(const dsl::CompiledModel& m,
                             const std::string& name) {
  const auto it = m.systems.find(name);
  if (it == m.systems.end()) throw Usage("no system named '" + name + "'");
  return it->second;
}

const Decomposition& find_implementation(const dsl::CompiledModel& m,
                                         const std::string& box) {
  const auto it = m.implementations.find(box);
  if (it == m.implementations.end()) {
    throw Usage("no implementation declared for box '" + box + "'");
  }
  return it->second;
}

std::vector<LinSystem> find_systems(const dsl::CompiledModel& m,
                                    const std::string& csv) {
  std::vector<LinSystem> out;
  for (const auto& name : split(csv, ',')) out.push_back(find_system(m, name));
  if (out.empty()) throw Usage("--systems must name at least one system");
  return out;
}

void emit(const std::string& payload, const std::string& output_path,
          std::ostream& out) {
  if (output_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(output_path);
  if (!f) throw Usage("cannot write '" + output_path + "'");
  f << payload;
}

json partition_json(std::span<const LinSystem> systems) {
  json parts = json::array();
  for (const auto& s : systems) {
    parts.push_back({{"box", s.box.name}, {"state_dim", s.state_dim()}});
  }
  return parts;
}

// --------------------------------------------------------------------------
// Shared command options.

struct CommonOpts {
  std::string model_path;
  std::string format = "json";
  std::string output;
  double tol = kDefaultTol;
};

struct SimulateOpts {
  CommonOpts common;
  std::string system;
  std::string diagram;
  std::string systems_csv;
  std::size_t steps = 0;
  std::string s0_csv;
  std::string input_constant;
  std::string input_inline;
  std::string input_csv_path;
  bool oracle = false;
  bool compare = false;
};

std::vector<std::vector<double>> build_inputs(const SimulateOpts& o,
                                              std::size_t total_in) {
  if (!o.input_csv_path.empty()) {
    std::ifstream f(o.input_csv_path);
    if (!f) throw Usage("cannot open input CSV '" + o.input_csv_path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    auto rows = inputs_from_csv(buf.str());
    if (rows.size() != o.steps) {
      throw Usage("input CSV has " + std::to_string(rows.size()) +
                  " rows, expected " + std::to_string(o.steps));
    }
    return rows;
  }
  if (!o.input_inline.empty()) {
    std::vector<std::vector<double>> rows;
    for (const auto& part : split(o.input_inline, ';')) {
      rows.push_back(parse_vector(part));
    }
    if (rows.size() != o.steps) {
      throw Usage("inline input has " + std::to_string(rows.size()) +
                  " rows, expected " + std::to_string(o.steps));
    }
    return rows;
  }
  std::vector<double> constant(total_in, 0.0);
  if (!o.input_constant.empty()) constant = parse_vector(o.input_constant);
  if (constant.size() != total_in) {
    throw Usage("constant input has length " +
                std::to_string(constant.size()) + ", expected " +
                std::to_string(total_in));
  }
  return std::vector<std::vector<double>>(o.steps, constant);
}

int cmd_compose(const CommonOpts& common, const std::string& diagram_name,
                const std::string& systems_csv, std::ostream& out,
                std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  const auto& diagram = find_diagram(model, diagram_name);
  const auto systems = find_systems(model, systems_csv);
  const LinSystem composite = apply_diagram(diagram, laxator(systems));
  if (common.format == "text") {
    emit(system_to_text(composite), common.output, out);
  } else {
    json j = to_json(composite);
    j["partition"] = partition_json(systems);
    emit(j.dump(2) + "\n", common.output, out);
  }
  return kOk;
}

int cmd_simulate(const SimulateOpts& o, std::ostream& out, std::ostream& err) {
  const auto model = load_model_or_fail(o.common.model_path, err);

  std::optional<WiringDiagram> diagram;
  std::vector<LinSystem> systems;
  LinSystem sys = [&]() {
    if (!o.system.empty()) return find_system(model, o.system);
    if (o.diagram.empty() || o.systems_csv.empty()) {
      throw Usage("simulate needs --system, or --diagram with --systems");
    }
    diagram = find_diagram(model, o.diagram);
    systems = find_systems(model, o.systems_csv);
    return apply_diagram(*diagram, laxator(systems));
  }();

  std::vector<double> s0(sys.state_dim(), 0.0);
  if (!o.s0_csv.empty()) s0 = parse_vector(o.s0_csv);
  if (s0.size() != sys.state_dim()) {
    throw Usage("--s0 has length " + std::to_string(s0.size()) +
                ", state dimension is " + std::to_string(sys.state_dim()));
  }
  const auto inputs = build_inputs(o, sys.box.total_in());

  auto split_s0 = [&]() {
    std::vector<std::vector<double>> parts;
    std::size_t off = 0;
    for (const auto& s : systems) {
      parts.emplace_back(s0.begin() + off, s0.begin() + off + s.state_dim());
      off += s.state_dim();
    }
    return parts;
  };

  if ((o.oracle || o.compare) && !diagram) {
    throw Usage("--oracle/--compare need the --diagram/--systems form");
  }

  Trace trace = o.oracle ? coupled_simulate(*diagram, systems, split_s0(), inputs)
                         : simulate(sys, s0, inputs);

  int code = kOk;
  if (o.compare) {
    const Trace other = o.oracle ? simulate(sys, s0, inputs)
                                 : coupled_simulate(*diagram, systems,
                                                    split_s0(), inputs);
    double max_diff = 0.0;
    for (std::size_t t = 0; t < trace.states.size(); ++t) {
      for (std::size_t i = 0; i < trace.states[t].size(); ++i) {
        max_diff = std::max(max_diff,
                            std::abs(trace.states[t][i] - other.states[t][i]));
      }
      for (std::size_t i = 0; i < trace.outputs[t].size(); ++i) {
        max_diff = std::max(
            max_diff, std::abs(trace.outputs[t][i] - other.outputs[t][i]));
      }
    }
    if (max_diff > o.common.tol) {
      err << "compare failed: composite and coupled traces differ by "
          << max_diff << " (tol " << o.common.tol << ")\n";
      code = kCheckFailed;
    } else {
      err << "compare ok: max difference " << max_diff << "\n";
    }
  }

  if (o.common.format == "csv") {
    emit(trace_to_csv(trace), o.common.output, out);
  } else {
    emit(to_json(trace).dump(2) + "\n", o.common.output, out);
  }
  return code;
}

int cmd_check(const CommonOpts& common, const std::string& diagram_name,
              const std::string& systems_csv, const std::string& target_name,
              std::ostream& out, std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  const auto& diagram = find_diagram(model, diagram_name);
  const auto systems = find_systems(model, systems_csv);
  const auto& target = find_system(model, target_name);
  const MatchReport report =
      check_composition(diagram, systems, target, common.tol);
  emit(to_json(report).dump(2) + "\n", common.output, out);
  return report.pass ? kOk : kCheckFailed;
}

int cmd_solve(const CommonOpts& common, const std::string& system_name,
              const std::string& partition_csv, const std::string& names_csv,
              std::ostream& out, std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  const auto& composite = find_system(model, system_name);
  StatePartition partition;
  std::vector<std::string> names = split(names_csv, ',');
  const auto dims = split(partition_csv, ',');
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::string name = i < names.size() ? names[i] : "part" + std::to_string(i);
    partition.parts.push_back({name, static_cast<std::size_t>(std::stoul(dims[i]))});
  }
  RecoverOptions opts;
  opts.tol = common.tol;
  const MatchReport report = recover_loop_blocks(composite, partition, opts);
  emit(to_json(report).dump(2) + "\n", common.output, out);
  return report.pass ? kOk : kCheckFailed;
}

int cmd_flatten(const CommonOpts& common, const std::string& box_name,
                std::ostream& out, std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  const auto& tree = find_implementation(model, box_name);
  const WiringDiagram flat = flatten(tree);
  if (common.format == "text") {
    std::ostringstream os;
    os << "flattened diagram into '" << flat.codomain.name << "' from:";
    for (const auto& leaf : leaves(tree)) os << " " << leaf.name;
    os << "\n";
    emit(os.str(), common.output, out);
  } else {
    json j = to_json(flat);
    json leaf_names = json::array();
    for (const auto& leaf : leaves(tree)) leaf_names.push_back(leaf.name);
    j["leaves"] = std::move(leaf_names);
    emit(j.dump(2) + "\n", common.output, out);
  }
  return kOk;
}

int cmd_export_dot(const CommonOpts& common, const std::string& diagram_name,
                   const std::string& box_name, std::ostream& out,
                   std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  if (!diagram_name.empty()) {
    emit(to_dot(find_diagram(model, diagram_name)), common.output, out);
  } else if (!box_name.empty()) {
    emit(to_dot(find_implementation(model, box_name)), common.output, out);
  } else {
    throw Usage("export-dot needs --diagram or --implement");
  }
  return kOk;
}

int cmd_export_json(const CommonOpts& common, std::ostream& out,
                    std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  emit(to_json(model).dump(2) + "\n", common.output, out);
  return kOk;
}

int cmd_run(const CommonOpts& common, std::ostream& out, std::ostream& err) {
  const auto model = load_model_or_fail(common.model_path, err);
  int worst = kOk;
  for (const auto& dir : model.directives) {
    if (const auto* sim = std::get_if<dsl::SimulateDirective>(&dir)) {
      const auto& sys = find_system(model, sim->system);
      std::vector<std::vector<double>> inputs;
      if (sim->constant_input) {
        inputs.assign(sim->steps, sim->input.rows.empty()
                                      ? std::vector<double>{}
                                      : sim->input.rows.front());
      } else {
        inputs = sim->input.rows;
      }
      const Trace trace = simulate(sys, sim->s0, inputs);
      out << "# simulate " << sim->system << "\n" << trace_to_csv(trace);
    } else if (const auto* chk = std::get_if<dsl::CheckDirective>(&dir)) {
      std::vector<LinSystem> systems;
      for (const auto& name : chk->systems)
        systems.push_back(find_system(model, name));
      const MatchReport report =
          check_composition(find_diagram(model, chk->diagram), systems,
                            find_system(model, chk->target),
                            chk->tol.value_or(common.tol));
      out << to_json(report).dump(2) << "\n";
      if (!report.pass) worst = kCheckFailed;
    } else if (const auto* slv = std::get_if<dsl::SolveDirective>(&dir)) {
      StatePartition partition;
      const char* default_names[] = {"L", "C", "D"};
      for (std::size_t i = 0; i < slv->partition.size(); ++i) {
        partition.parts.push_back(
            {i < 3 ? default_names[i] : "part" + std::to_string(i),
             slv->partition[i]});
      }
      RecoverOptions opts;
      opts.tol = slv->tol.value_or(common.tol);
      const MatchReport report =
          recover_loop_blocks(find_system(model, slv->system), partition, opts);
      out << to_json(report).dump(2) << "\n";
      if (!report.pass) worst = kCheckFailed;
    }
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"wirecomp - compositional linear system modeling"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string diagram_name, systems_csv, target_name, system_name;
  std::string partition_csv, names_csv = "L,C,D", box_name;
  SimulateOpts sim;

  auto add_common = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("model", common.model_path, "model file (.wd)")->required();
    cmd->add_option("--output,-o", common.output, "write payload to a file");
    cmd->add_option("--tol", common.tol, "comparison tolerance")
        ->check(CLI::PositiveNumber);
    if (with_format) {
      cmd->add_option("--format", common.format, "output format");
    }
  };

  auto* compose = app.add_subcommand("compose", "compose systems via a diagram");
  add_common(compose);
  compose->add_option("--diagram", diagram_name)->required();
  compose->add_option("--systems", systems_csv, "comma-separated system names")
      ->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "simulate a system");
  simulate_cmd->add_option("model", sim.common.model_path)->required();
  simulate_cmd->add_option("--output,-o", sim.common.output);
  simulate_cmd->add_option("--tol", sim.common.tol)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--format", sim.common.format, "csv or json");
  simulate_cmd->add_option("--system", sim.system);
  simulate_cmd->add_option("--diagram", sim.diagram);
  simulate_cmd->add_option("--systems", sim.systems_csv);
  simulate_cmd->add_option("--steps", sim.steps)->required();
  simulate_cmd->add_option("--s0", sim.s0_csv, "initial state, comma-separated");
  simulate_cmd->add_option("--input-constant", sim.input_constant);
  simulate_cmd->add_option("--input-inline", sim.input_inline,
                           "rows separated by ';'");
  simulate_cmd->add_option("--input-csv", sim.input_csv_path);
  simulate_cmd->add_flag("--oracle", sim.oracle,
                         "use the coupled operational simulation");
  simulate_cmd->add_flag("--compare", sim.compare,
                         "assert composite and coupled traces agree");

  auto* check = app.add_subcommand("check", "compare a composition to a target");
  add_common(check);
  check->add_option("--diagram", diagram_name)->required();
  check->add_option("--systems", systems_csv)->required();
  check->add_option("--target", target_name)->required();

  auto* solve = app.add_subcommand("solve", "recover loop blocks from a composite");
  add_common(solve);
  solve->add_option("--system", system_name)->required();
  solve->add_option("--partition", partition_csv, "e.g. 1,1,3")->required();
  solve->add_option("--names", names_csv, "partition part names");

  auto* flatten_cmd = app.add_subcommand("flatten", "flatten a decomposition");
  add_common(flatten_cmd);
  flatten_cmd->add_option("--implement", box_name)->required();

  auto* export_dot = app.add_subcommand("export-dot", "Graphviz export");
  add_common(export_dot, false);
  export_dot->add_option("--diagram", diagram_name);
  export_dot->add_option("--implement", box_name);

  auto* export_json = app.add_subcommand("export-json", "model JSON export");
  add_common(export_json, false);

  auto* run_cmd = app.add_subcommand("run", "execute the model's directives");
  add_common(run_cmd, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (compose->parsed())
      return cmd_compose(common, diagram_name, systems_csv, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(sim, out, err);
    if (check->parsed())
      return cmd_check(common, diagram_name, systems_csv, target_name, out, err);
    if (solve->parsed())
      return cmd_solve(common, system_name, partition_csv, names_csv, out, err);
    if (flatten_cmd->parsed()) return cmd_flatten(common, box_name, out, err);
    if (export_dot->parsed())
      return cmd_export_dot(common, diagram_name, box_name, out, err);
    if (export_json->parsed()) return cmd_export_json(common, out, err);
    if (run_cmd->parsed()) return cmd_run(common, out, err);
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const BoundaryError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace wirecomp::cli
