#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsynd/gf2.hpp"
#include "qsynd/noise.hpp"

namespace qsynd {

// How the decoder treats the measured syndrome.
//   kPerfect:           syndrome taken as exact (full confidence).
//   kHard:              thresholded noisy syndrome, signs trusted as-is.
//   kSoft:              analog syndrome; unreliable checks weaken messages
//                       and the syndrome belief evolves between iterations.
//   kSoftNoReliability: like kSoft but the reliability estimate stays at its
//                       initial value; only the sign belief may flip.
enum class DecoderMode { kPerfect, kHard, kSoft, kSoftNoReliability };

// Channel prior on the decoded error component.
//   kDepolarizingMarginal: q = 2p/3, the X (or Z) marginal of depolarizing
//                          noise of strength p.
//   kBernoulliP:           q = p taken directly as the flip probability.
enum class PriorMode { kDepolarizingMarginal, kBernoulliP };

struct DecoderConfig {
    DecoderMode mode = DecoderMode::kHard;
    double beta = 0.75;           // normalization factor on check messages
    double gamma_cutoff = 5.0;    // syndrome reliability cutoff (soft modes)
    int max_iterations = 100;
    double llr_sat = 30.0;        // symmetric clamp on all LLR quantities
    PriorMode prior_mode = PriorMode::kDepolarizingMarginal;
    // Soft modes: feed the evolving beliefs back into the check update (true)
    // or keep using the initially measured values (false).
    bool evolving_check_inputs = true;

    void validate() const;
};

// Bipartite check/variable adjacency in CSR form, edges grouped by check and
// ordered by variable within a check.
struct TannerGraph {
    std::size_t num_checks = 0;
    std::size_t num_vars = 0;
    std::vector<std::uint32_t> check_edge_begin;  // size num_checks + 1
    std::vector<std::uint32_t> edge_var;          // per edge, grouped by check
    std::vector<std::uint32_t> edge_check;        // per edge
    std::vector<std::uint32_t> var_edge_begin;    // size num_vars + 1
    std::vector<std::uint32_t> var_edge_ids;      // edge ids grouped by variable

    std::size_t num_edges() const { return edge_var.size(); }
};

TannerGraph build_graph(const SparseBitMatrix& h);

// Per-trial message-passing state. Message arrays are indexed by edge id.
struct DecoderState {
    std::vector<double> prior;             // lambda_j per variable
    std::vector<double> nu;                // variable-to-check messages
    std::vector<double> mu;                // check-to-variable messages
    std::vector<std::int8_t> s_meas;       // measured syndrome signs
    std::vector<double> gamma_meas;        // measured syndrome |LLR|
    std::vector<std::int8_t> s_belief;     // running syndrome sign belief
    std::vector<double> gamma_belief;      // running syndrome reliability
};

struct DecodeResult {
    BitVector x_hat;
    bool converged = false;
    int iterations = 0;
    // Syndrome bits of the final sign beliefs: the halt target. In soft modes
    // this is the possibly revised belief, otherwise the measured syndrome.
    BitVector revised_syndrome;
};

// Prior LLR ln((1-q)/q) on each of n bits, clamped to +-llr_sat.
std::vector<double> error_prior_llr(std::size_t n, double p, PriorMode prior_mode,
                                    double llr_sat);

// Messages start from the prior (nu) and zero (mu); syndrome beliefs start
// from the observation, with full reliability in kPerfect mode.
DecoderState init_state(const TannerGraph& graph, std::span<const double> prior,
                        const SyndromeObservation& obs, const DecoderConfig& config);

// nu_{i,j} = lambda_j + sum of mu into j from checks other than i, clamped.
void variable_update(DecoderState& state, const TannerGraph& graph,
                     const DecoderConfig& config);

// Normalized min-sum check update trusting the measured syndrome signs:
// mu_{i,j} = beta * s_i * prod_extrinsic sgn(nu) * min_extrinsic |nu|.
void check_update_standard(DecoderState& state, const TannerGraph& graph,
                           const DecoderConfig& config);

// Soft-syndrome check update: checks whose reliability is at or below
// gamma_cutoff contribute their own reliability to the extrinsic minimum,
// and the sign comes from the (possibly evolving) syndrome belief.
void check_update_soft(DecoderState& state, const TannerGraph& graph,
                       const DecoderConfig& config);

// Between-iteration belief revision. With M = min |nu| and P = prod sgn(nu)
// over all edges of a check: if M exceeds the current reliability, either
// reinforce (P agrees with the sign belief: raise reliability to M, skipped
// in kSoftNoReliability) or flip the sign belief (P disagrees).
void syndrome_belief_update(DecoderState& state, const TannerGraph& graph,
                            const DecoderConfig& config);

// Hard decision per variable: 1 iff lambda_j plus all incoming mu is negative.
BitVector decide(const DecoderState& state, const TannerGraph& graph);

// True iff h * x_hat matches target_signs (+1 for 0, -1 for 1) on every check.
bool halt_check(const BitVector& x_hat, const SparseBitMatrix& h,
                std::span<const std::int8_t> target_signs);

// Runs the flooding schedule (variable update, check update, belief revision
// in soft modes, decision, halt test) for at most max_iterations rounds.
// If trace is non-null, per-iteration records are appended as CSV.
DecodeResult decode(const TannerGraph& graph, const SparseBitMatrix& h,
                    std::span<const double> prior, const SyndromeObservation& obs,
                    const DecoderConfig& config, std::ostream* trace = nullptr);

}  // namespace qsynd
