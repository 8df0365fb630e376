#pragma once

#include <string>

#include "wirecomp/dsl.hpp"
#include "wirecomp/inverse.hpp"
#include "wirecomp/system.hpp"

#include <nlohmann/json_fwd.hpp>

namespace wirecomp {

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Box& b);
nlohmann::json to_json(const LinSystem& s);
nlohmann::json to_json(const WiringDiagram& d);
nlohmann::json to_json(const MatchReport& r);
nlohmann::json to_json(const Trace& t);

/// Machine-readable export of a compiled model: boxes, systems, diagram
/// matrices, decomposition trees.
nlohmann::json to_json(const dsl::CompiledModel& m);

/// CSV trace: header `t,s1..sn,y1..ym`, one row per time index (T+1 rows).
std::string trace_to_csv(const Trace& t);

/// Plain-text rendering of a system's matrices, for the CLI `--format text`.
std::string system_to_text(const LinSystem& s);
std::string matrix_to_text(const Matrix& m);

/// Parses an input sequence from CSV text: one row per step, columns are the
/// input components. A header row is skipped when present.
std::vector<std::vector<double>> inputs_from_csv(const std::string& text);

}  // namespace wirecomp
