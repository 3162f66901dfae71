#pragma once

#include <string>
#include <vector>

#include "memsat/bench.hpp"
#include "memsat/config.hpp"
#include "memsat/dmm.hpp"
#include "memsat/walksat.hpp"

namespace memsat::params {

// Flat config keys shared by config files and command-line flags.
const std::vector<std::string>& dmm_keys();    // alpha beta gamma delta epsilon zeta dt xl_max max_steps eval_stride sample_stride adaptive
const std::vector<std::string>& sls_keys();    // noise max_flips max_restarts
const std::vector<std::string>& sweep_keys();  // solvers ns seeds_per_n base_seed rho_xor threshold budget_s workers

/// Each apply_* reads only its own keys and leaves others alone.
void apply_dmm(const config::KeyValues& kv, DmmParams& p);
void apply_sls(const config::KeyValues& kv, SlsParams& p);
void apply_sweep(const config::KeyValues& kv, bench::SweepSpec& spec);

void dump_dmm(const DmmParams& p, config::KeyValues& out);
void dump_sls(const SlsParams& p, config::KeyValues& out);
void dump_sweep(const bench::SweepSpec& spec, config::KeyValues& out);

/// Sweep spec from a config file: sweep keys plus any dmm/sls keys. Unknown
/// keys are errors.
bench::SweepSpec load_sweep_spec(const config::KeyValues& kv);

}  // namespace memsat::params
