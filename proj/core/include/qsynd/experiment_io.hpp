#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "qsynd/harness.hpp"

namespace qsynd {

// Reads an experiment description:
// {
//   "code": {"preset": "lp_tanner"}
//         | {"base_a": "a.json", "base_b": "b.json"}
//         | {"hx_alist": "hx.alist", "hz_alist": "hz.alist"},
//   "p_grid": [0.05], "sigma_grid": [0.0, 0.3],
//   "modes": ["perfect", "hard", "soft", "soft_no_reliability"],
//   "decoder": {"beta": 0.75, "gamma_cutoff": 5.0, "l_max": 100,
//               "llr_sat": 30.0, "prior": "depolarizing_marginal",
//               "evolving_check_inputs": true},
//   "stop": {"fixed_trials": 2000}
//         | {"target_logical_errors": 100, "max_trials": 1000000},
//   "master_seed": 1
// }
// The decoder block and master_seed are optional; omitted decoder fields keep
// their defaults. Relative code paths are resolved against base_dir (for the
// path overload, the config file's directory).
ExperimentConfig read_experiment_config(std::istream& in,
                                        const std::filesystem::path& base_dir = {});
ExperimentConfig read_experiment_config(const std::filesystem::path& path);

// Shortest round-trip decimal representation (the sweep CSV number format).
std::string format_double(double value);

// Writes one CSV row per aggregate after a schema comment line and the header
//   code,mode,p,sigma,beta,gamma_cutoff,l_max,trials,logical_errors,ler,
//   ler_stderr,avg_iterations,avg_iterations_converged,seed
// Numbers use shortest round-trip formatting; output contains no timestamps,
// so identical runs produce identical bytes.
void write_sweep_csv(std::ostream& out, const ExperimentConfig& config,
                     std::span<const AggregateStats> stats);
void write_sweep_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                     std::span<const AggregateStats> stats);

}  // namespace qsynd
