#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lbv/counterexample.hpp"
#include "lbv/sequences.hpp"
#include "lbv/step_function.hpp"

namespace lbv::io {

using nlohmann::json;

/// {"breakpoints": [...], "values": [...], "periodic": bool}. Doubles are
/// written in shortest round-trip form, so parse(dump(f)) == f bit for bit.
json to_json(const StepFunction& f);
StepFunction step_function_from_json(const json& j);
std::string dump(const StepFunction& f);
StepFunction read_step_function(const std::filesystem::path& path);

/// Inline forms: "constant:c", "power:alpha", "explicit:v1,v2,...".
WatermanSequence parse_sequence_spec(std::string_view spec);
/// Inline forms: "power:beta", "power-log:beta,gamma",
/// "tabulated:d0:v0,d1:v1,...".
ModulusOfContinuity parse_modulus_spec(std::string_view spec);

/// {"kind": ..., "c"|"alpha"|"values": ...}
WatermanSequence sequence_from_json(const json& j);
/// {"kind": ..., "beta", "gamma", "values": [[d, v], ...]}
ModulusOfContinuity modulus_from_json(const json& j);
json to_json(const WatermanSequence& seq);
json to_json(const ModulusOfContinuity& mod);

/// {"K": K, "stages": [{"k","n","m","s","N","phi"}], "relaxation": {"a","c"}}
json to_json(const CounterexamplePlan& plan);
CounterexamplePlan plan_from_json(const json& j);

/// Writes to a sibling temp file, then renames over `path`.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace lbv::io
