#include "lbv/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lbv/counterexample.hpp"
#include "lbv/embedding.hpp"
#include "lbv/errors.hpp"
#include "lbv/extremal.hpp"
#include "lbv/io.hpp"
#include "lbv/modulus.hpp"
#include "lbv/variation.hpp"

namespace lbv::cli {
namespace {

using io::json;

std::string num(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(x);
}

json load_config(const RunConfig& cfg) {
  if (!cfg.config_path) return json::object();
  std::ifstream in(*cfg.config_path);
  if (!in) throw ArgumentError("cannot open config " + *cfg.config_path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError("malformed config " + *cfg.config_path + ": " + e.what());
  }
}

WatermanSequence sequence_of(const RunConfig& cfg, const json& conf) {
  if (cfg.lambda_spec) return io::parse_sequence_spec(*cfg.lambda_spec);
  if (conf.contains("lambda")) return io::sequence_from_json(conf.at("lambda"));
  throw ArgumentError("--lambda (or a config with a 'lambda' entry) is required");
}

ModulusOfContinuity modulus_of(const RunConfig& cfg, const json& conf) {
  if (cfg.omega_spec) return io::parse_modulus_spec(*cfg.omega_spec);
  if (conf.contains("omega")) return io::modulus_from_json(conf.at("omega"));
  throw ArgumentError("--omega (or a config with an 'omega' entry) is required");
}

StepFunction function_of(const RunConfig& cfg) {
  if (!cfg.function_path) throw ArgumentError("--function is required");
  return io::read_step_function(*cfg.function_path);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path) {
    io::write_atomically(*cfg.output_path, text);
  } else {
    out << text;
  }
}

json witness_json(const IntervalFamily& fam) {
  json w = json::array();
  for (const auto& iv : fam) w.push_back({iv.a, iv.b});
  return w;
}

int run_variation(const RunConfig& cfg, std::ostream& out) {
  auto conf = load_config(cfg);
  auto f = function_of(cfg);
  auto seq = sequence_of(cfg, conf);
  if (cfg.force_exact && cfg.force_greedy) throw ArgumentError("--exact and --greedy are exclusive");
  VariationResult res = cfg.force_exact    ? variation_exact(f, seq, cfg.p, cfg.limit)
                        : cfg.force_greedy ? variation_greedy(f, seq, cfg.p)
                                           : variation(f, seq, cfg.p, cfg.limit);
  if (cfg.format == Format::Csv) {
    std::ostringstream s;
    s << "a,b,change\n";
    for (const auto& iv : res.witness) {
      s << num(iv.a) << ',' << num(iv.b) << ',' << num(f.increment_over(iv)) << '\n';
    }
    emit(cfg, s.str(), out);
  } else {
    json j{{"value", res.value},
           {"exact", res.exact},
           {"witness", witness_json(res.witness)},
           {"norm", std::abs(f.eval(0.0)) + res.value},
           {"p", cfg.p},
           {"lambda", io::to_json(seq)}};
    emit(cfg, j.dump(2) + "\n", out);
  }
  return kExitOk;
}

int run_modulus(const RunConfig& cfg, std::ostream& out) {
  auto f = function_of(cfg);
  if (cfg.profile || cfg.format == Format::Csv) {
    auto prof = shift_profile(f, cfg.delta, cfg.q);
    std::ostringstream s;
    s << "gamma,distance\n";
    for (std::size_t i = 0; i < prof.gamma_breaks.size(); ++i) {
      s << num(prof.gamma_breaks[i]) << ',' << num(prof.distances[i]) << '\n';
    }
    emit(cfg, s.str(), out);
  } else {
    auto res = omega_q_detail(f, cfg.delta, cfg.q, cfg.threads);
    json j{{"omega_q", res.value},
           {"argmax_gamma", res.argmax_gamma},
           {"delta", cfg.delta},
           {"q", cfg.q},
           {"periodic", f.periodic()}};
    emit(cfg, j.dump(2) + "\n", out);
  }
  return kExitOk;
}

int run_embed(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto conf = load_config(cfg);
  EmbeddingParams params{sequence_of(cfg, conf), modulus_of(cfg, conf), cfg.p, cfg.q};
  std::size_t samples = cfg.samples;
  if (samples == 0) {
    samples = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(std::max<std::int64_t>(cfg.n_max, 1))))) + 1;
    samples = std::max<std::size_t>(samples, 8);
  }
  auto rep = embed_report(params, cfg.n_max, samples);
  json summary{{"verdict", std::string(to_string(rep.verdict))},
               {"slope", rep.slope},
               {"sup_term", rep.sup_term},
               {"median_term", rep.median_term},
               {"last_quarter_max", rep.last_quarter_max},
               {"first_term", rep.first_term},
               {"last_term", rep.last_term},
               {"n_max", cfg.n_max},
               {"samples", rep.sampled_n.size()}};
  if (cfg.summary_path) io::write_atomically(*cfg.summary_path, summary.dump(2) + "\n");
  if (cfg.format == Format::Csv) {
    std::ostringstream s;
    s << "n,E_n,k_star\n";
    for (std::size_t i = 0; i < rep.sampled_n.size(); ++i) {
      s << rep.sampled_n[i] << ',' << num(rep.terms[i]) << ',' << rep.argmax_k[i] << '\n';
    }
    emit(cfg, s.str(), out);
    err << summary.dump() << '\n';
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < rep.sampled_n.size(); ++i) {
      rows.push_back({{"n", rep.sampled_n[i]}, {"E_n", rep.terms[i]}, {"k_star", rep.argmax_k[i]}});
    }
    summary["rows"] = rows;
    emit(cfg, summary.dump(2) + "\n", out);
  }
  return kExitOk;
}

int run_extremal(const RunConfig& cfg, std::ostream& out) {
  auto conf = load_config(cfg);
  ExtremalProblem prob{sequence_of(cfg, conf), cfg.n, cfg.r, cfg.budget};
  auto sol = solve_closed_form(prob);
  if (cfg.format == Format::Csv) {
    std::ostringstream s;
    s << "i,x\n";
    for (std::size_t i = 0; i < sol.x.size(); ++i) s << i + 1 << ',' << num(sol.x[i]) << '\n';
    emit(cfg, s.str(), out);
    return kExitOk;
  }
  json j{{"k_star", sol.k_star},
         {"x", sol.x},
         {"value", sol.value},
         {"vertex_value", brute_force_value(prob, cfg.resolution, BruteForceMode::Vertices)}};
  if (prob.n <= kMaxGridDimension && cfg.resolution > 0) {
    j["grid_value"] = brute_force_value(prob, cfg.resolution, BruteForceMode::Grid);
    j["resolution"] = cfg.resolution;
  }
  emit(cfg, j.dump(2) + "\n", out);
  return kExitOk;
}

int run_counterexample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto conf = load_config(cfg);
  EmbeddingParams params{sequence_of(cfg, conf), modulus_of(cfg, conf), cfg.p, cfg.q};
  auto plan = find_violation(params, cfg.stages, cfg.n_limit, {cfg.relax_a, cfg.relax_c});
  auto cert = certify(plan, params, cfg.threads);
  if (cfg.emit_g_path) io::write_atomically(*cfg.emit_g_path, io::dump(cert.g));

  if (cfg.format == Format::Csv) {
    std::ostringstream s;
    s << "k,n,m,s,N,phi,variation,variation_bound,omega_q,omega,ratio,guaranteed,chain_ok,window_clipped\n";
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
      const auto& st = plan.stages[i];
      const auto& mb = cert.membership[i];
      const auto& dv = cert.divergence[i];
      s << st.k << ',' << st.n << ',' << st.m << ',' << st.s << ',' << st.N << ',' << num(st.phi) << ','
        << num(mb.computed) << ',' << num(mb.bound) << ',' << num(dv.omega_q) << ',' << num(dv.omega)
        << ',' << num(dv.ratio) << ',' << num(dv.guaranteed) << ',' << dv.chain_ok << ','
        << dv.window_clipped << '\n';
    }
    emit(cfg, s.str(), out);
  } else {
    json stages = json::array();
    for (std::size_t i = 0; i < plan.stages.size(); ++i) {
      const auto& mb = cert.membership[i];
      const auto& dv = cert.divergence[i];
      stages.push_back({{"k", mb.k},
                        {"variation", mb.computed},
                        {"variation_bound", mb.bound},
                        {"variation_ok", mb.ok()},
                        {"omega_q", dv.omega_q},
                        {"omega", dv.omega},
                        {"ratio", dv.ratio},
                        {"guaranteed", dv.guaranteed},
                        {"ratio_ok", dv.ok()},
                        {"chain_lhs", dv.chain_lhs},
                        {"chain_rhs", dv.chain_rhs},
                        {"chain_ok", dv.chain_ok},
                        {"window_clipped", dv.window_clipped}});
    }
    json j{{"plan", io::to_json(plan)},
           {"certificates", stages},
           {"norm", cert.norm},
           {"norm_exact", cert.norm_exact},
           {"norm_bound", cert.norm_bound},
           {"passed", cert.passed()}};
    emit(cfg, j.dump(2) + "\n", out);
  }
  if (!cert.passed()) {
    err << "certification failed\n";
    return kExitDomain;
  }
  return kExitOk;
}

unsigned threads_from_env() {
  const char* v = std::getenv("LBV_THREADS");
  if (v == nullptr) return 1;
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(v, v + std::strlen(v), n);
  if (ec != std::errc{} || n == 0) return 1;
  return n;
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Waterman-Shiba variation, integral moduli and embedding checks for step functions", "lbv"};
  app.require_subcommand(1, 1);

  std::string format;
  auto common = [&](CLI::App* sub, bool needs_lambda, bool needs_omega) {
    sub->add_option("-o,--output", cfg.output_path, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv or structured (default: csv for embed-check, else structured)")->check(CLI::IsMember({"csv", "structured"}));
    if (needs_lambda || needs_omega) {
      sub->add_option("--config", cfg.config_path, "JSON config with 'lambda'/'omega' objects")
          ->check(CLI::ExistingFile);
    }
    if (needs_lambda) sub->add_option("--lambda", cfg.lambda_spec, "constant:c | power:alpha | explicit:v1,v2,...");
    if (needs_omega) {
      sub->add_option("--omega", cfg.omega_spec, "power:beta | power-log:beta,gamma | tabulated:d:v,...");
    }
  };

  auto* var = app.add_subcommand("variation", "p-Lambda-variation of a step function");
  common(var, true, false);
  var->add_option("--function", cfg.function_path, "Step function JSON file")->required()->check(CLI::ExistingFile);
  var->add_option("--p", cfg.p, "Exponent p >= 1");
  var->add_flag("--exact", cfg.force_exact, "Exact branch-and-bound search");
  var->add_flag("--greedy", cfg.force_greedy, "Local-search lower bound");
  var->add_option("--limit", cfg.limit, "Breakpoint cap for exact search");

  auto* mod = app.add_subcommand("modulus", "Integral modulus of continuity");
  common(mod, false, false);
  mod->add_option("--function", cfg.function_path, "Step function JSON file")->required()->check(CLI::ExistingFile);
  mod->add_option("--q", cfg.q, "Exponent q >= 1");
  mod->add_option("--delta", cfg.delta, "Shift bound in [0, 1]")->required();
  mod->add_flag("--profile", cfg.profile, "Emit the shift profile as CSV (gamma, distance)");

  auto* emb = app.add_subcommand("embed-check", "Evaluate the embedding criterion E_n");
  common(emb, true, true);
  emb->add_option("--p", cfg.p, "Exponent p >= 1");
  emb->add_option("--q", cfg.q, "Exponent q >= 1");
  emb->add_option("--n-max", cfg.n_max, "Largest n sampled");
  emb->add_option("--samples", cfg.samples, "Number of geometric samples (default: one per doubling)");
  emb->add_option("--summary", cfg.summary_path, "Also write the JSON summary here");

  auto* ext = app.add_subcommand("extremal", "Closed-form constrained maximum with brute-force checks");
  common(ext, true, false);
  ext->add_option("--n", cfg.n, "Dimension")->required();
  ext->add_option("--r", cfg.r, "Exponent r > 0")->required();
  ext->add_option("--budget", cfg.budget, "Constraint right-hand side");
  ext->add_option("--resolution", cfg.resolution, "Grid resolution for n <= 3 (0 disables)");

  auto* cex = app.add_subcommand("counterexample", "Build and certify the spike-train counterexample");
  common(cex, true, true);
  cex->add_option("--p", cfg.p, "Exponent p >= 1");
  cex->add_option("--q", cfg.q, "Exponent q >= 1");
  cex->add_option("--stages", cfg.stages, "Number of stages K");
  cex->add_option("--n-limit", cfg.n_limit, "Largest n scanned per stage");
  cex->add_option("--relax-a", cfg.relax_a, "Smallness target exponent a in c*2^(-a k)");
  cex->add_option("--relax-c", cfg.relax_c, "Smallness target constant c");
  cex->add_option("--emit-g", cfg.emit_g_path, "Write g as a step function JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what());
  }
  for (auto* sub : app.get_subcommands()) {
    cfg.subcommand = sub->get_name();
  }
  if (format.empty()) format = cfg.subcommand == "embed-check" ? "csv" : "structured";
  cfg.format = format == "csv" ? Format::Csv : Format::Structured;
  cfg.threads = threads_from_env();
  return cfg;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "variation") return run_variation(config, out);
    if (config.subcommand == "modulus") return run_modulus(config, out);
    if (config.subcommand == "embed-check") return run_embed(config, out, err);
    if (config.subcommand == "extremal") return run_extremal(config, out);
    if (config.subcommand == "counterexample") return run_counterexample(config, out, err);
    err << "lbv: unknown subcommand '" << config.subcommand << "'\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "lbv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "lbv: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "lbv: internal error: " << e.what() << '\n';
    return kExitDomain;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const PreconditionError& e) {
    err << "lbv: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return dispatch(*cfg, out, err);
}

}  // namespace lbv::cli
