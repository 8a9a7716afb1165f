#include "lbv/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lbv/errors.hpp"

namespace lbv::io {
namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  auto first = text.data();
  auto last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ArgumentError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view spec) {
  auto pos = spec.find(':');
  if (pos == std::string_view::npos) {
    throw ArgumentError("spec '" + std::string(spec) + "' must look like kind:parameters");
  }
  return {spec.substr(0, pos), spec.substr(pos + 1)};
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ArgumentError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const StepFunction& f) {
  return json{{"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
              {"values", std::vector<double>(f.values().begin(), f.values().end())},
              {"periodic", f.periodic()}};
}

StepFunction step_function_from_json(const json& j) {
  if (!j.is_object()) throw ConstructionError("step function must be a JSON object");
  auto t = field<std::vector<double>>(j, "breakpoints");
  auto v = field<std::vector<double>>(j, "values");
  bool periodic = j.contains("periodic") ? field<bool>(j, "periodic") : false;
  return StepFunction::from_breakpoints(std::move(t), std::move(v), periodic);
}

std::string dump(const StepFunction& f) { return to_json(f).dump() + "\n"; }

StepFunction read_step_function(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open function file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConstructionError("malformed function file " + path.string() + ": " + e.what());
  }
  return step_function_from_json(j);
}

WatermanSequence parse_sequence_spec(std::string_view spec) {
  auto [kind, rest] = split_kind(spec);
  if (kind == "constant") return WatermanSequence::constant(parse_number(rest, "constant"));
  if (kind == "power") return WatermanSequence::power(parse_number(rest, "alpha"));
  if (kind == "explicit") {
    std::vector<double> vals;
    for (auto part : split(rest, ',')) vals.push_back(parse_number(part, "sequence value"));
    return WatermanSequence::explicit_values(std::move(vals));
  }
  throw ArgumentError("unknown sequence kind '" + std::string(kind) + "'");
}

ModulusOfContinuity parse_modulus_spec(std::string_view spec) {
  auto [kind, rest] = split_kind(spec);
  if (kind == "power") return ModulusOfContinuity::power(parse_number(rest, "beta"));
  if (kind == "power-log") {
    auto parts = split(rest, ',');
    if (parts.size() != 2) throw ArgumentError("power-log expects beta,gamma");
    return ModulusOfContinuity::power_log(parse_number(parts[0], "beta"),
                                          parse_number(parts[1], "gamma"));
  }
  if (kind == "tabulated") {
    std::vector<std::pair<double, double>> knots;
    for (auto part : split(rest, ',')) {
      auto dv = split(part, ':');
      if (dv.size() != 2) throw ArgumentError("tabulated knots must be delta:value");
      knots.emplace_back(parse_number(dv[0], "delta"), parse_number(dv[1], "value"));
    }
    return ModulusOfContinuity::tabulated(std::move(knots));
  }
  throw ArgumentError("unknown modulus kind '" + std::string(kind) + "'");
}

WatermanSequence sequence_from_json(const json& j) {
  auto kind = field<std::string>(j, "kind");
  if (kind == "constant") return WatermanSequence::constant(field<double>(j, "c"));
  if (kind == "power") return WatermanSequence::power(field<double>(j, "alpha"));
  if (kind == "explicit") return WatermanSequence::explicit_values(field<std::vector<double>>(j, "values"));
  throw ArgumentError("unknown sequence kind '" + kind + "'");
}

ModulusOfContinuity modulus_from_json(const json& j) {
  auto kind = field<std::string>(j, "kind");
  if (kind == "power") return ModulusOfContinuity::power(field<double>(j, "beta"));
  if (kind == "power-log") {
    return ModulusOfContinuity::power_log(field<double>(j, "beta"), field<double>(j, "gamma"));
  }
  if (kind == "tabulated") {
    return ModulusOfContinuity::tabulated(field<std::vector<std::pair<double, double>>>(j, "values"));
  }
  throw ArgumentError("unknown modulus kind '" + kind + "'");
}

json to_json(const WatermanSequence& seq) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, WatermanSequence::Constant>) {
          return {{"kind", "constant"}, {"c", k.c}};
        } else if constexpr (std::is_same_v<K, WatermanSequence::Power>) {
          return {{"kind", "power"}, {"alpha", k.alpha}};
        } else {
          return {{"kind", "explicit"}, {"values", k.values}};
        }
      },
      seq.kind());
}

json to_json(const ModulusOfContinuity& mod) {
  json j = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ModulusOfContinuity::Power>) {
          return {{"kind", "power"}, {"beta", k.beta}};
        } else if constexpr (std::is_same_v<K, ModulusOfContinuity::PowerLog>) {
          return {{"kind", "power-log"}, {"beta", k.beta}, {"gamma", k.gamma}};
        } else {
          return {{"kind", "tabulated"}, {"values", k.knots}};
        }
      },
      mod.kind());
  if (mod.scale() != 1.0) j["scale"] = mod.scale();
  return j;
}

json to_json(const CounterexamplePlan& plan) {
  json stages = json::array();
  for (const auto& st : plan.stages) {
    stages.push_back({{"k", st.k}, {"n", st.n}, {"m", st.m}, {"s", st.s}, {"N", st.N}, {"phi", st.phi}});
  }
  return {{"K", plan.K()},
          {"stages", stages},
          {"relaxation", {{"a", plan.relaxation.a}, {"c", plan.relaxation.c}}}};
}

CounterexamplePlan plan_from_json(const json& j) {
  CounterexamplePlan plan;
  auto rel = field<json>(j, "relaxation");
  plan.relaxation = {field<double>(rel, "a"), field<double>(rel, "c")};
  for (const auto& s : field<json>(j, "stages")) {
    plan.stages.push_back({field<int>(s, "k"), field<std::int64_t>(s, "n"), field<std::int64_t>(s, "m"),
                           field<std::int64_t>(s, "s"), field<std::int64_t>(s, "N"),
                           field<double>(s, "phi")});
  }
  if (j.contains("K") && field<int>(j, "K") != plan.K()) {
    throw ArgumentError("plan K does not match its stage list");
  }
  validate_plan(plan);
  return plan;
}

void write_atomically(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ArgumentError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ArgumentError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace lbv::io
