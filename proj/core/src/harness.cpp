#include "qsynd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qsynd/gf2_io.hpp"
#include "qsynd/qc_base.hpp"

namespace qsynd {

namespace {

constexpr std::uint64_t kBatchSize = 1024;

std::uint64_t grid_stream(std::size_t p_index, std::size_t sigma_index) {
    return (static_cast<std::uint64_t>(p_index) << 32) |
           static_cast<std::uint64_t>(sigma_index);
}

}  // namespace

CodeContext::CodeContext(CssCode code)
    : code_(std::move(code)),
      graph_for_x_(build_graph(code_.h_z)),
      graph_for_z_(build_graph(code_.h_x)),
      rowspace_h_x_(code_.h_x.to_dense()),
      rowspace_h_z_(code_.h_z.to_dense()) {}

TrialClassification classify(const CodeContext& ctx, const PauliErrorVector& e,
                             const BitVector& x_hat_x, const BitVector& x_hat_z) {
    const std::size_t n = ctx.code().n;
    if (e.n() != n || x_hat_x.size() != n || x_hat_z.size() != n) {
        throw std::invalid_argument("classify: dimension mismatch");
    }
    const BitVector r_x = e.e_x ^ x_hat_x;
    const BitVector r_z = e.e_z ^ x_hat_z;
    const bool harmless =
        ctx.rowspace_h_x().contains(r_x) && ctx.rowspace_h_z().contains(r_z);
    return harmless ? TrialClassification::kSuccess : TrialClassification::kLogicalError;
}

bool counts_as_logical_error(const TrialOutcome& outcome) {
    return !outcome.converged_x || !outcome.converged_z ||
           outcome.classification == TrialClassification::kLogicalError;
}

TrialOutcome run_trial(const CodeContext& ctx, const NoiseParams& noise,
                       const DecoderConfig& config, std::uint64_t trial_index, Rng& rng) {
    noise.validate();
    config.validate();
    const CssCode& code = ctx.code();

    const PauliErrorVector e = sample_depolarizing(code.n, noise.p, rng);
    const BitVector s_x = ideal_syndrome(code.h_z, e.e_x);
    const BitVector s_z = ideal_syndrome(code.h_x, e.e_z);

    const double sigma_eff = config.mode == DecoderMode::kPerfect ? 0.0 : noise.sigma;
    const SyndromeObservation obs_x = observe_syndrome(s_x, sigma_eff, config.llr_sat, rng);
    const SyndromeObservation obs_z = observe_syndrome(s_z, sigma_eff, config.llr_sat, rng);

    const std::vector<double> prior =
        error_prior_llr(code.n, noise.p, config.prior_mode, config.llr_sat);
    const DecodeResult res_x = decode(ctx.graph_for_x(), code.h_z, prior, obs_x, config);
    const DecodeResult res_z = decode(ctx.graph_for_z(), code.h_x, prior, obs_z, config);

    TrialOutcome outcome;
    outcome.trial_index = trial_index;
    outcome.converged_x = res_x.converged;
    outcome.converged_z = res_z.converged;
    outcome.iterations_x = res_x.iterations;
    outcome.iterations_z = res_z.iterations;
    outcome.classification = classify(ctx, e, res_x.x_hat, res_z.x_hat);
    return outcome;
}

void CodeSelection::validate() const {
    const bool has_preset = !preset.empty();
    const bool has_bases = !base_a_path.empty() || !base_b_path.empty();
    const bool has_alists = !hx_alist_path.empty() || !hz_alist_path.empty();
    if (has_preset + has_bases + has_alists != 1) {
        throw std::invalid_argument("CodeSelection: exactly one code source must be set");
    }
    if (has_bases && (base_a_path.empty() || base_b_path.empty())) {
        throw std::invalid_argument("CodeSelection: both base matrix paths are required");
    }
    if (has_alists && (hx_alist_path.empty() || hz_alist_path.empty())) {
        throw std::invalid_argument("CodeSelection: both alist paths are required");
    }
    if (has_preset && preset != "lp_tanner" && preset != "hgp_rep3") {
        throw std::invalid_argument("CodeSelection: unknown preset '" + preset + "'");
    }
}

CssCode build_code(const CodeSelection& selection) {
    selection.validate();
    if (selection.preset == "lp_tanner") {
        CssCode code = lifted_product(tanner_base(), tanner_base(), "lp_tanner");
        code.d_label = 20;
        return code;
    }
    if (selection.preset == "hgp_rep3") {
        CssCode code = lifted_product(repetition3_base(), repetition3_base(), "hgp_rep3");
        code.d_label = 3;
        return code;
    }
    if (!selection.base_a_path.empty()) {
        const QcBaseMatrix a = read_qc_base(selection.base_a_path);
        const QcBaseMatrix b = read_qc_base(selection.base_b_path);
        return lifted_product(a, b);
    }
    SparseBitMatrix h_x = read_alist(selection.hx_alist_path);
    SparseBitMatrix h_z = read_alist(selection.hz_alist_path);
    return make_css_code("custom", std::move(h_x), std::move(h_z));
}

StopRule StopRule::fixed(std::uint64_t trials) {
    StopRule rule;
    rule.fixed_trials = trials;
    rule.validate();
    return rule;
}

StopRule StopRule::until_errors(std::uint64_t errors, std::uint64_t cap) {
    StopRule rule;
    rule.target_logical_errors = errors;
    rule.max_trials = cap;
    rule.validate();
    return rule;
}

void StopRule::validate() const {
    const bool is_fixed = fixed_trials > 0;
    const bool is_target = target_logical_errors > 0 || max_trials > 0;
    if (is_fixed == is_target) {
        throw std::invalid_argument(
            "StopRule: set either fixed_trials or target_logical_errors with max_trials");
    }
    if (is_target && (target_logical_errors == 0 || max_trials == 0)) {
        throw std::invalid_argument(
            "StopRule: target_logical_errors and max_trials must both be positive");
    }
}

void ExperimentConfig::validate() const {
    code.validate();
    if (p_grid.empty() || sigma_grid.empty() || modes.empty()) {
        throw std::invalid_argument("ExperimentConfig: grids and modes must be non-empty");
    }
    for (double p : p_grid) {
        NoiseParams{p, 0.0}.validate();
    }
    for (double sigma : sigma_grid) {
        NoiseParams{0.0, sigma}.validate();
    }
    decoder.validate();
    stop.validate();
}

double stderr_estimate(std::uint64_t logical_errors, std::uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("stderr_estimate: trials must be positive");
    }
    if (logical_errors > trials) {
        throw std::invalid_argument("stderr_estimate: more errors than trials");
    }
    const double q = static_cast<double>(logical_errors) / static_cast<double>(trials);
    return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

namespace {

struct GridAccumulator {
    std::uint64_t trials = 0;
    std::uint64_t logical_errors = 0;
    std::uint64_t iteration_sum = 0;        // over both sides of every trial
    std::uint64_t converged_sides = 0;
    std::uint64_t converged_iteration_sum = 0;

    void add(const TrialOutcome& outcome) {
        ++trials;
        if (counts_as_logical_error(outcome)) {
            ++logical_errors;
        }
        iteration_sum += static_cast<std::uint64_t>(outcome.iterations_x) +
                         static_cast<std::uint64_t>(outcome.iterations_z);
        if (outcome.converged_x) {
            ++converged_sides;
            converged_iteration_sum += static_cast<std::uint64_t>(outcome.iterations_x);
        }
        if (outcome.converged_z) {
            ++converged_sides;
            converged_iteration_sum += static_cast<std::uint64_t>(outcome.iterations_z);
        }
    }
};

// Fills outcome slots [first, last) of one batch. Each trial draws from a
// fresh generator keyed by (master_seed, stream, trial index), so the split
// across workers cannot change any result.
void run_batch_span(const CodeContext& ctx, const NoiseParams& noise,
                    const DecoderConfig& config, std::uint64_t master_seed,
                    std::uint64_t stream, std::uint64_t batch_start,
                    std::size_t first, std::size_t last,
                    std::vector<TrialOutcome>& out) {
    for (std::size_t i = first; i < last; ++i) {
        const std::uint64_t trial = batch_start + i;
        Rng rng = make_trial_rng(master_seed, stream, trial);
        out[i] = run_trial(ctx, noise, config, trial, rng);
    }
}

AggregateStats run_grid_point(const CodeContext& ctx, const ExperimentConfig& config,
                              DecoderMode mode, std::size_t p_index,
                              std::size_t sigma_index, unsigned workers) {
    const NoiseParams noise{config.p_grid[p_index], config.sigma_grid[sigma_index]};
    DecoderConfig decoder = config.decoder;
    decoder.mode = mode;
    const std::uint64_t stream = grid_stream(p_index, sigma_index);
    const std::uint64_t trial_cap =
        config.stop.fixed_trials > 0 ? config.stop.fixed_trials : config.stop.max_trials;

    GridAccumulator acc;
    std::vector<TrialOutcome> outcomes;
    std::uint64_t next_trial = 0;
    while (next_trial < trial_cap) {
        const std::uint64_t batch = std::min(kBatchSize, trial_cap - next_trial);
        outcomes.assign(static_cast<std::size_t>(batch), TrialOutcome{});
        if (workers <= 1 || batch == 1) {
            run_batch_span(ctx, noise, decoder, config.master_seed, stream, next_trial, 0,
                           outcomes.size(), outcomes);
        } else {
            const std::size_t used = std::min<std::size_t>(workers, outcomes.size());
            std::vector<std::thread> pool;
            pool.reserve(used);
            const std::size_t chunk = (outcomes.size() + used - 1) / used;
            for (std::size_t w = 0; w < used; ++w) {
                const std::size_t first = w * chunk;
                const std::size_t last = std::min(first + chunk, outcomes.size());
                pool.emplace_back(run_batch_span, std::cref(ctx), std::cref(noise),
                                  std::cref(decoder), config.master_seed, stream,
                                  next_trial, first, last, std::ref(outcomes));
            }
            for (auto& t : pool) {
                t.join();
            }
        }
        for (const TrialOutcome& outcome : outcomes) {
            acc.add(outcome);
        }
        next_trial += batch;
        if (config.stop.target_logical_errors > 0 &&
            acc.logical_errors >= config.stop.target_logical_errors) {
            break;
        }
    }

    AggregateStats stats;
    stats.code_name = ctx.code().name;
    stats.mode = mode;
    stats.p = noise.p;
    stats.sigma = noise.sigma;
    stats.trials = acc.trials;
    stats.logical_errors = acc.logical_errors;
    stats.ler = static_cast<double>(acc.logical_errors) / static_cast<double>(acc.trials);
    stats.ler_stderr = stderr_estimate(acc.logical_errors, acc.trials);
    stats.avg_iterations =
        static_cast<double>(acc.iteration_sum) / (2.0 * static_cast<double>(acc.trials));
    stats.avg_iterations_converged =
        acc.converged_sides == 0
            ? 0.0
            : static_cast<double>(acc.converged_iteration_sum) /
                  static_cast<double>(acc.converged_sides);
    return stats;
}

}  // namespace

std::vector<AggregateStats> run_experiment(const CodeContext& ctx,
                                           const ExperimentConfig& config,
                                           unsigned workers, const ProgressFn& progress) {
    config.validate();
    std::vector<AggregateStats> results;
    results.reserve(config.modes.size() * config.p_grid.size() * config.sigma_grid.size());
    for (DecoderMode mode : config.modes) {
        for (std::size_t pi = 0; pi < config.p_grid.size(); ++pi) {
            for (std::size_t si = 0; si < config.sigma_grid.size(); ++si) {
                results.push_back(run_grid_point(ctx, config, mode, pi, si, workers));
                if (progress) {
                    progress(results.back());
                }
            }
        }
    }
    return results;
}

std::vector<AggregateStats> run_experiment(const ExperimentConfig& config, unsigned workers,
                                           const ProgressFn& progress) {
    config.validate();
    const CodeContext ctx(build_code(config.code));
    return run_experiment(ctx, config, workers, progress);
}

const char* to_string(DecoderMode mode) {
    switch (mode) {
        case DecoderMode::kPerfect: return "perfect";
        case DecoderMode::kHard: return "hard";
        case DecoderMode::kSoft: return "soft";
        case DecoderMode::kSoftNoReliability: return "soft_no_reliability";
    }
    throw std::invalid_argument("to_string: invalid DecoderMode");
}

DecoderMode mode_from_string(const std::string& name) {
    if (name == "perfect") return DecoderMode::kPerfect;
    if (name == "hard") return DecoderMode::kHard;
    if (name == "soft") return DecoderMode::kSoft;
    if (name == "soft_no_reliability") return DecoderMode::kSoftNoReliability;
    throw std::invalid_argument("unknown decoder mode '" + name + "'");
}

const char* to_string(PriorMode mode) {
    switch (mode) {
        case PriorMode::kDepolarizingMarginal: return "depolarizing_marginal";
        case PriorMode::kBernoulliP: return "bernoulli_p";
    }
    throw std::invalid_argument("to_string: invalid PriorMode");
}

PriorMode prior_mode_from_string(const std::string& name) {
    if (name == "depolarizing_marginal") return PriorMode::kDepolarizingMarginal;
    if (name == "bernoulli_p") return PriorMode::kBernoulliP;
    throw std::invalid_argument("unknown prior mode '" + name + "'");
}

}  // namespace qsynd
