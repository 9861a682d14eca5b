#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qsynd/gf2.hpp"

namespace qsynd {

// Independent depolarizing noise of strength p on data qubits plus additive
// Gaussian noise of strength sigma on the analog syndrome readout.
struct NoiseParams {
    double p = 0.0;
    double sigma = 0.0;

    // Throws std::invalid_argument unless p in [0, 1] and sigma >= 0.
    void validate() const;
};

// Binary symplectic representation of a Pauli error: qubit i carries an X
// component iff e_x[i], a Z component iff e_z[i], and Y sets both.
struct PauliErrorVector {
    BitVector e_x;
    BitVector e_z;

    std::size_t n() const { return e_x.size(); }
};

// One noisy readout of a syndrome. For check i with ideal syndrome bit b_i,
// the bipolar value s_i = +1 - 2*b_i is transmitted and
//   raw[i]  = s_i + N(0, sigma^2)
//   llr[i]  = clamp(2 * raw[i] / sigma^2, +-llr_sat)
//   hard_sign[i] = -1 if raw[i] < 0 else +1
// With sigma = 0 the readout is exact: raw[i] = s_i, llr[i] = s_i * llr_sat.
struct SyndromeObservation {
    std::vector<double> raw;
    std::vector<std::int8_t> hard_sign;
    std::vector<double> llr;

    std::size_t checks() const { return raw.size(); }
};

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to spread structured seed material.
std::uint64_t mix64(std::uint64_t x);

// Deterministic per-trial generator derived from a master seed and a stream
// index (grid point) plus a counter (trial number within the stream).
Rng make_trial_rng(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t counter);

// Uniform draw in [0, 1) using the top 53 bits of one engine output. The
// samplers below are hand-rolled on top of this so that the number of engine
// calls per sample is fixed and portable, which the reproducibility
// guarantees of the harness rely on.
double uniform01(Rng& rng);

// Standard normal via Box-Muller (cosine branch); exactly two engine calls.
double gauss01(Rng& rng);

// Draws a depolarizing error on n qubits: each qubit independently suffers
// X, Y or Z with probability p/3 each. Consumes exactly n engine calls.
PauliErrorVector sample_depolarizing(std::size_t n, double p, Rng& rng);

// s = H * e over GF(2).
BitVector ideal_syndrome(const SparseBitMatrix& h, const BitVector& e);

// Adds Gaussian noise to the bipolar syndrome and converts to channel LLRs.
// Consumes two engine calls per check when sigma > 0 and none when sigma == 0.
SyndromeObservation observe_syndrome(const BitVector& syndrome_bits, double sigma,
                                     double llr_sat, Rng& rng);

// LLR of one analog readout value; exposed for direct testing.
double syndrome_llr(double raw, double sigma, double llr_sat);

}  // namespace qsynd
