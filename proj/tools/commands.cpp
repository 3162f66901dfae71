#include "commands.hpp"

#include <filesystem>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "memsat/bench.hpp"
#include "memsat/config.hpp"
#include "memsat/dimacs.hpp"
#include "memsat/dmm.hpp"
#include "memsat/errors.hpp"
#include "memsat/params_io.hpp"
#include "memsat/walksat.hpp"
#include "memsat/xorsat.hpp"

namespace memsat::cli {
namespace {

namespace fs = std::filesystem;

// Flag values collected as strings, layered over a config file:
// defaults < --config file < flags.
class Overrides {
 public:
  void add(CLI::App* app, const std::string& key, const std::string& help) {
    auto& slot = values_[key];
    options_[key] = app->add_option("--" + flag_name(key), slot, help);
  }
  void merge_into(config::KeyValues& kv) const {
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) kv.set(key, values_.at(key));
    }
  }

 private:
  static std::string flag_name(std::string key) {
    for (auto& c : key) c = c == '_' ? '-' : c;
    return key;
  }
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> options_;
};

config::KeyValues load_layers(const std::string& config_path, const Overrides& flags) {
  config::KeyValues kv;
  if (!config_path.empty()) kv = config::KeyValues::load(config_path);
  flags.merge_into(kv);
  return kv;
}

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> lists) {
  std::vector<std::string> out;
  for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
  return out;
}

struct GenerateArgs {
  std::size_t n = 0;
  double rho = kDeltaRhoXor;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool print_config = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.print_config) {
    out << "n = " << a.n << "\nrho_xor = " << config::format_double(a.rho) << "\nseed = " << a.seed << "\n";
    return kExitOk;
  }
  const XorInstance xi = generate_balanced_xorsat(a.n, a.rho, a.seed);
  const CnfFormula f = expand_instance(xi);
  fs::create_directories(a.out_dir);
  const std::string stem = (fs::path(a.out_dir) / ("d" + std::to_string(a.n) + "_s" + std::to_string(a.seed))).string();
  const std::vector<std::string> comments = {
      "balanced delta-Max-E3SAT n=" + std::to_string(a.n) + " rho_xor=" + config::format_double(a.rho) +
      " seed=" + std::to_string(a.seed) + " generator_version=" + std::to_string(kGeneratorVersion)};
  dimacs::write_text(stem + ".xcnf", dimacs::emit_xcnf(xi));
  dimacs::write_text(stem + ".cnf", dimacs::emit(f, comments));
  dimacs::write_text(stem + ".json", dimacs::emit_metadata(xi));
  out << "wrote " << stem << ".{cnf,xcnf,json}: N=" << f.n_vars() << " M=" << f.n_clauses()
      << " rho=" << config::format_double(f.density()) << "\n";
  return kExitOk;
}

struct SolveArgs {
  std::string solver = "dmm";
  std::string cnf_path;
  std::string config_path;
  std::string json_path;
  std::string assignment_path;
  double threshold = 0.015;
  std::uint64_t seed = 1;
  bool print_config = false;
};

int cmd_solve(const SolveArgs& a, const Overrides& flags, std::ostream& out) {
  config::KeyValues kv = load_layers(a.config_path, flags);
  kv.require_known(concat({&params::dmm_keys(), &params::sls_keys()}));
  DmmParams dmm;
  SlsParams sls;
  params::apply_dmm(kv, dmm);
  params::apply_sls(kv, sls);
  sls.seed = a.seed;
  sls.threshold_fraction = a.threshold;
  const auto solver = bench::parse_solver(a.solver);
  if (a.print_config) {
    config::KeyValues resolved;
    params::dump_dmm(dmm, resolved);
    params::dump_sls(sls, resolved);
    out << resolved.dump();
    return kExitOk;
  }
  const CnfFormula f = dimacs::read_file(a.cnf_path);
  SolveResult r = solver == bench::SolverId::kDmm ? solve_dmm(f, dmm, a.threshold, a.seed)
                                                   : solve_sls(f, sls);
  nlohmann::ordered_json j;
  j["solver"] = a.solver;
  j["n"] = f.n_vars();
  j["m"] = f.n_clauses();
  j["seed"] = a.seed;
  j["threshold_fraction"] = a.threshold;
  j["threshold_count"] = threshold_count(a.threshold, f.n_clauses());
  j["result"] = nlohmann::ordered_json::parse(to_json(r));
  out << j.dump() << "\n";
  if (!a.json_path.empty()) dimacs::write_text(a.json_path, to_json(r, true) + "\n");
  if (!a.assignment_path.empty()) dimacs::write_text(a.assignment_path, dimacs::emit_v_line(r.best_assignment));
  return r.stop_reason == StopReason::kThresholdReached ? kExitOk : kExitNotReached;
}

int cmd_verify(const std::string& cnf_path, const std::string& assignment_path, std::ostream& out) {
  const CnfFormula f = dimacs::read_file(cnf_path);
  const Assignment a = dimacs::parse_assignment(dimacs::read_text(assignment_path));
  const std::size_t unsat = count_unsat(f, a);
  out << unsat << "\n";
  return unsat == 0 ? kExitOk : kExitNotReached;
}

struct BenchArgs {
  std::string spec_path;
  std::string csv_path;
  bool print_config = false;
};

int cmd_bench(const BenchArgs& a, const Overrides& flags, std::ostream& out) {
  const auto spec = params::load_sweep_spec(load_layers(a.spec_path, flags));
  if (a.print_config) {
    config::KeyValues resolved;
    params::dump_sweep(spec, resolved);
    params::dump_dmm(spec.settings.dmm, resolved);
    params::dump_sls(spec.settings.sls, resolved);
    out << resolved.dump();
    return kExitOk;
  }
  const auto records = bench::run_sweep(spec, a.csv_path);
  std::size_t reached = 0;
  for (const auto& r : records) reached += r.status == bench::CellStatus::kThresholdReached;
  out << "ran " << records.size() << " cells (" << reached << " reached threshold), appended to "
      << a.csv_path << "\n";
  return kExitOk;
}

struct FitArgs {
  std::string csv_path;
  std::string model = "both";
  bool json = false;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  const auto records = bench::parse_csv(dimacs::read_text(a.csv_path));
  std::vector<bench::ScalingModel> models;
  if (a.model == "both") models = {bench::ScalingModel::kPowerLaw, bench::ScalingModel::kExponential};
  else models = {bench::parse_model(a.model)};

  std::vector<bench::SolverId> solvers;
  for (auto s : {bench::SolverId::kDmm, bench::SolverId::kSls}) {
    for (const auto& r : records) {
      if (r.solver == s) {
        solvers.push_back(s);
        break;
      }
    }
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  bool any = false;
  std::string insufficient;
  out << std::left << std::setw(8) << "solver" << std::setw(13) << "model" << std::setw(14) << "slope"
      << std::setw(14) << "intercept" << std::setw(10) << "r2" << "points\n";
  for (auto s : solvers) {
    for (auto m : models) {
      try {
        const auto fit = bench::fit_scaling(records, s, m);
        any = true;
        out << std::left << std::setprecision(6) << std::setw(8) << bench::to_string(s) << std::setw(13)
            << bench::to_string(m) << std::setw(14) << fit.slope << std::setw(14) << fit.intercept
            << std::setw(10) << fit.r_squared << fit.n_points << "\n";
        j.push_back({{"solver", bench::to_string(s)}, {"model", bench::to_string(m)}, {"slope", fit.slope},
                     {"intercept", fit.intercept}, {"r_squared", fit.r_squared}, {"n_points", fit.n_points}});
      } catch (const InsufficientData& e) {
        insufficient = bench::to_string(s) + ": " + e.what();
        out << std::left << std::setw(8) << bench::to_string(s) << std::setw(13) << bench::to_string(m)
            << "InsufficientData\n";
      }
    }
  }
  if (a.json) out << j.dump() << "\n";
  if (!any) throw InsufficientData(insufficient.empty() ? "no records" : insufficient);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"memsat: balanced delta-Max-E3SAT instances, memcomputing-style dynamics solver, "
               "local-search baseline and scaling benchmarks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a balanced 3-XORSAT instance and its CNF expansion");
  generate->add_option("-n,--n", gen.n, "Number of variables")->required();
  generate->add_option("--rho", gen.rho, "XOR clause density")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  generate->add_option("-o,--out", gen.out_dir, "Output directory")->capture_default_str();
  generate->add_flag("--print-config", gen.print_config, "Print the resolved configuration and exit");

  SolveArgs sol;
  Overrides solve_flags;
  auto* solve = app.add_subcommand("solve", "Run a solver on a DIMACS CNF file");
  solve->add_option("cnf", sol.cnf_path, "DIMACS CNF file");
  solve->add_option("--solver", sol.solver, "dmm or sls")->capture_default_str();
  solve->add_option("--config", sol.config_path, "key=value parameter file");
  solve->add_option("--threshold", sol.threshold, "Unsat clause fraction to reach")->capture_default_str();
  solve->add_option("--seed", sol.seed, "Run seed")->capture_default_str();
  solve->add_option("--json", sol.json_path, "Write the SolveResult (with assignment) as JSON");
  solve->add_option("--assignment", sol.assignment_path, "Write the best assignment as a 'v' line");
  solve->add_flag("--print-config", sol.print_config, "Print the resolved configuration and exit");
  for (const auto& k : params::dmm_keys()) solve_flags.add(solve, k, "dmm parameter");
  for (const auto& k : params::sls_keys()) solve_flags.add(solve, k, "sls parameter");

  std::string verify_cnf, verify_assignment;
  auto* verify = app.add_subcommand("verify", "Count clauses left unsatisfied by an assignment");
  verify->add_option("cnf", verify_cnf, "DIMACS CNF file")->required();
  verify->add_option("assignment", verify_assignment, "Assignment file (bits or 'v' lines)")->required();

  BenchArgs ben;
  Overrides bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Run a time-to-threshold sweep and append CSV rows");
  bench_cmd->add_option("spec", ben.spec_path, "Sweep spec (key=value)");
  bench_cmd->add_option("-o,--out", ben.csv_path, "Output CSV");
  bench_cmd->add_flag("--print-config", ben.print_config, "Print the resolved configuration and exit");
  for (const auto& k : params::sweep_keys()) bench_flags.add(bench_cmd, k, "sweep setting");
  for (const auto& k : params::dmm_keys()) bench_flags.add(bench_cmd, k, "dmm parameter");
  for (const auto& k : params::sls_keys()) bench_flags.add(bench_cmd, k, "sls parameter");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit power-law and exponential scaling to a sweep CSV");
  fit->add_option("csv", fit_args.csv_path, "Sweep CSV")->required();
  fit->add_option("--model", fit_args.model, "power_law, exponential or both")->capture_default_str();
  fit->add_flag("--json", fit_args.json, "Also print the fits as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (solve->parsed()) {
      if (sol.cnf_path.empty() && !sol.print_config) throw ConfigError("solve: missing CNF path");
      return cmd_solve(sol, solve_flags, out);
    }
    if (verify->parsed()) return cmd_verify(verify_cnf, verify_assignment, out);
    if (bench_cmd->parsed()) {
      if (ben.csv_path.empty() && !ben.print_config) throw ConfigError("bench: missing -o output CSV");
      return cmd_bench(ben, bench_flags, out);
    }
    if (fit->parsed()) return cmd_fit(fit_args, out);
  } catch (const InfeasibleBalance& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NonFiniteState& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInput;
}

}  // namespace memsat::cli
