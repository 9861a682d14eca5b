#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsynd/css.hpp"
#include "qsynd/decoder.hpp"
#include "qsynd/gf2.hpp"
#include "qsynd/noise.hpp"

namespace qsynd {

enum class TrialClassification { kSuccess, kLogicalError };

struct TrialOutcome {
    std::uint64_t trial_index = 0;
    bool converged_x = false;
    bool converged_z = false;
    int iterations_x = 0;  // max_iterations when the X-side decode did not converge
    int iterations_z = 0;
    TrialClassification classification = TrialClassification::kSuccess;
};

// Immutable per-code state shared by all trials: Tanner graphs of both
// parity-check matrices and cached row spaces for residual classification.
class CodeContext {
public:
    explicit CodeContext(CssCode code);

    const CssCode& code() const { return code_; }
    // X errors are checked by h_z, Z errors by h_x.
    const TannerGraph& graph_for_x() const { return graph_for_x_; }
    const TannerGraph& graph_for_z() const { return graph_for_z_; }
    const RowSpace& rowspace_h_x() const { return rowspace_h_x_; }
    const RowSpace& rowspace_h_z() const { return rowspace_h_z_; }

private:
    CssCode code_;
    TannerGraph graph_for_x_;
    TannerGraph graph_for_z_;
    RowSpace rowspace_h_x_;
    RowSpace rowspace_h_z_;
};

// Residual-based success test. With r_x = e_x xor x_hat_x and
// r_z = e_z xor x_hat_z, the trial is a success iff r_x lies in the row
// space of h_x and r_z in the row space of h_z (residuals equal to a
// stabilizer act trivially). A residual with non-zero syndrome is never a
// row-space member. Convergence plays no role here; see
// counts_as_logical_error for the rate-level accounting.
TrialClassification classify(const CodeContext& ctx, const PauliErrorVector& e,
                             const BitVector& x_hat_x, const BitVector& x_hat_z);

// Rate-level failure test: a trial counts toward the logical error rate
// when either decode side failed to halt or the residual classification is
// kLogicalError. A decoder that never finds any error matching its target
// syndrome has failed even if its last estimate happens to be benign; this
// is what produces the hard-mode error floor under syndrome noise, where a
// single flipped check makes the measured syndrome unsatisfiable.
bool counts_as_logical_error(const TrialOutcome& outcome);

// One Monte-Carlo trial: sample a depolarizing error, observe both syndromes
// (exactly in kPerfect mode, through the Gaussian channel otherwise), decode
// the X and Z sides independently and classify the residuals.
TrialOutcome run_trial(const CodeContext& ctx, const NoiseParams& noise,
                       const DecoderConfig& config, std::uint64_t trial_index, Rng& rng);

// Which code a config refers to: a named preset, a pair of QC base JSON
// files, or a pair of alist parity-check files. Exactly one source must be
// set. Presets: "lp_tanner" and "hgp_rep3".
struct CodeSelection {
    std::string preset;
    std::string base_a_path, base_b_path;
    std::string hx_alist_path, hz_alist_path;

    void validate() const;
};

CssCode build_code(const CodeSelection& selection);

// Either run exactly fixed_trials, or run until target_logical_errors have
// been seen (checked at batch boundaries) capped at max_trials.
struct StopRule {
    std::uint64_t fixed_trials = 0;
    std::uint64_t target_logical_errors = 0;
    std::uint64_t max_trials = 0;

    static StopRule fixed(std::uint64_t trials);
    static StopRule until_errors(std::uint64_t errors, std::uint64_t cap);
    void validate() const;
};

struct ExperimentConfig {
    CodeSelection code;
    std::vector<double> p_grid;
    std::vector<double> sigma_grid;
    std::vector<DecoderMode> modes;
    DecoderConfig decoder;  // decoder.mode is overridden per entry of modes
    StopRule stop;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct AggregateStats {
    std::string code_name;
    DecoderMode mode = DecoderMode::kHard;
    double p = 0.0;
    double sigma = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t logical_errors = 0;  // trials with counts_as_logical_error
    double ler = 0.0;
    double ler_stderr = 0.0;
    double avg_iterations = 0.0;            // mean over both decode sides
    double avg_iterations_converged = 0.0;  // mean over converged sides only
};

// Binomial standard error sqrt(q * (1 - q) / trials) of the rate estimate.
double stderr_estimate(std::uint64_t logical_errors, std::uint64_t trials);

using ProgressFn = std::function<void(const AggregateStats&)>;

// Runs the full (mode, p, sigma) grid. Trial seeds depend only on
// (master_seed, p index, sigma index, trial number), so every mode sees the
// same error streams, and results are bit-identical for any worker count.
// The progress callback, if set, fires once per completed grid point.
std::vector<AggregateStats> run_experiment(const CodeContext& ctx,
                                           const ExperimentConfig& config,
                                           unsigned workers,
                                           const ProgressFn& progress = {});
std::vector<AggregateStats> run_experiment(const ExperimentConfig& config,
                                           unsigned workers,
                                           const ProgressFn& progress = {});

const char* to_string(DecoderMode mode);
DecoderMode mode_from_string(const std::string& name);
const char* to_string(PriorMode mode);
PriorMode prior_mode_from_string(const std::string& name);

}  // namespace qsynd
