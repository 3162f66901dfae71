#include "memsat/params_io.hpp"

#include "memsat/errors.hpp"

namespace memsat::params {

using config::format_double;
using config::KeyValues;

const std::vector<std::string>& dmm_keys() {
  static const std::vector<std::string> keys = {"alpha", "beta",      "gamma",     "delta",
                                                "epsilon", "zeta",    "dt",        "xl_max",
                                                "max_steps", "eval_stride", "sample_stride", "adaptive"};
  return keys;
}

const std::vector<std::string>& sls_keys() {
  static const std::vector<std::string> keys = {"noise", "max_flips", "max_restarts"};
  return keys;
}

const std::vector<std::string>& sweep_keys() {
  static const std::vector<std::string> keys = {"solvers", "ns",        "seeds_per_n", "base_seed",
                                                "rho_xor", "threshold", "budget_s",    "workers"};
  return keys;
}

void apply_dmm(const KeyValues& kv, DmmParams& p) {
  for (const auto& [k, v] : kv.entries()) {
    if (k == "alpha") p.alpha = config::to_double(k, v);
    else if (k == "beta") p.beta = config::to_double(k, v);
    else if (k == "gamma") p.gamma = config::to_double(k, v);
    else if (k == "delta") p.delta = config::to_double(k, v);
    else if (k == "epsilon") p.epsilon = config::to_double(k, v);
    else if (k == "zeta") p.zeta = config::to_double(k, v);
    else if (k == "dt") p.dt = config::to_double(k, v);
    else if (k == "xl_max") {
      if (v == "auto") p.xl_max.reset();
      else p.xl_max = config::to_double(k, v);
    }
    else if (k == "max_steps") p.max_steps = config::to_int(k, v);
    else if (k == "eval_stride") p.eval_stride = config::to_int(k, v);
    else if (k == "sample_stride") p.sample_stride = config::to_int(k, v);
    else if (k == "adaptive") p.adaptive = config::to_bool(k, v);
  }
  p.validate();
}

void apply_sls(const KeyValues& kv, SlsParams& p) {
  for (const auto& [k, v] : kv.entries()) {
    if (k == "noise") p.noise = config::to_double(k, v);
    else if (k == "max_flips") p.max_flips = config::to_int(k, v);
    else if (k == "max_restarts") p.max_restarts = config::to_int(k, v);
  }
  p.validate();
}

void apply_sweep(const KeyValues& kv, bench::SweepSpec& spec) {
  for (const auto& [k, v] : kv.entries()) {
    if (k == "solvers") {
      spec.solvers.clear();
      for (const auto& s : config::to_list(v)) spec.solvers.push_back(bench::parse_solver(s));
    } else if (k == "ns") {
      spec.ns.clear();
      for (const auto& s : config::to_list(v)) spec.ns.push_back(config::to_uint(k, s));
    } else if (k == "seeds_per_n") spec.seeds_per_n = config::to_uint(k, v);
    else if (k == "base_seed") spec.base_seed = config::to_uint(k, v);
    else if (k == "rho_xor") spec.rho_xor = config::to_double(k, v);
    else if (k == "threshold") spec.threshold_fraction = config::to_double(k, v);
    else if (k == "budget_s") spec.budget_s = config::to_double(k, v);
    else if (k == "workers") spec.workers = config::to_uint(k, v);
  }
}

void dump_dmm(const DmmParams& p, KeyValues& out) {
  out.set("alpha", format_double(p.alpha));
  out.set("beta", format_double(p.beta));
  out.set("gamma", format_double(p.gamma));
  out.set("delta", format_double(p.delta));
  out.set("epsilon", format_double(p.epsilon));
  out.set("zeta", format_double(p.zeta));
  out.set("dt", format_double(p.dt));
  out.set("xl_max", p.xl_max ? format_double(*p.xl_max) : "auto");
  out.set("max_steps", std::to_string(p.max_steps));
  out.set("eval_stride", std::to_string(p.eval_stride));
  out.set("sample_stride", std::to_string(p.sample_stride));
  out.set("adaptive", p.adaptive ? "true" : "false");
}

void dump_sls(const SlsParams& p, KeyValues& out) {
  out.set("noise", format_double(p.noise));
  out.set("max_flips", std::to_string(p.max_flips));
  out.set("max_restarts", std::to_string(p.max_restarts));
}

void dump_sweep(const bench::SweepSpec& spec, KeyValues& out) {
  std::string solvers, ns;
  for (auto s : spec.solvers) solvers += (solvers.empty() ? "" : ",") + bench::to_string(s);
  for (auto n : spec.ns) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  out.set("solvers", solvers);
  out.set("ns", ns);
  out.set("seeds_per_n", std::to_string(spec.seeds_per_n));
  out.set("base_seed", std::to_string(spec.base_seed));
  out.set("rho_xor", format_double(spec.rho_xor));
  out.set("threshold", format_double(spec.threshold_fraction));
  out.set("budget_s", format_double(spec.budget_s));
  out.set("workers", std::to_string(spec.workers));
}

bench::SweepSpec load_sweep_spec(const KeyValues& kv) {
  std::vector<std::string> known = sweep_keys();
  known.insert(known.end(), dmm_keys().begin(), dmm_keys().end());
  known.insert(known.end(), sls_keys().begin(), sls_keys().end());
  kv.require_known(known);
  bench::SweepSpec spec;
  apply_sweep(kv, spec);
  apply_dmm(kv, spec.settings.dmm);
  apply_sls(kv, spec.settings.sls);
  return spec;
}

}  // namespace memsat::params
