#include "qsynd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsynd {

void NoiseParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("NoiseParams: p must be in [0, 1]");
    }
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("NoiseParams: sigma must be non-negative");
    }
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Rng make_trial_rng(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ mix64(stream));
    s = mix64(s ^ mix64(counter));
    return Rng(s);
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gauss01(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1], keeps the log finite
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

PauliErrorVector sample_depolarizing(std::size_t n, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("sample_depolarizing: p must be in [0, 1]");
    }
    PauliErrorVector e{BitVector(n), BitVector(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform01(rng);
        if (u < p / 3.0) {
            e.e_x.set(i, true);                    // X
        } else if (u < 2.0 * p / 3.0) {
            e.e_x.set(i, true);                    // Y
            e.e_z.set(i, true);
        } else if (u < p) {
            e.e_z.set(i, true);                    // Z
        }
    }
    return e;
}

BitVector ideal_syndrome(const SparseBitMatrix& h, const BitVector& e) {
    return mat_vec_mod2(h, e);
}

double syndrome_llr(double raw, double sigma, double llr_sat) {
    if (sigma == 0.0) {
        return raw < 0.0 ? -llr_sat : llr_sat;
    }
    return std::clamp(2.0 * raw / (sigma * sigma), -llr_sat, llr_sat);
}

SyndromeObservation observe_syndrome(const BitVector& syndrome_bits, double sigma,
                                     double llr_sat, Rng& rng) {
    if (!(sigma >= 0.0)) {
        throw std::invalid_argument("observe_syndrome: sigma must be non-negative");
    }
    if (!(llr_sat > 0.0)) {
        throw std::invalid_argument("observe_syndrome: llr_sat must be positive");
    }
    const std::size_t m = syndrome_bits.size();
    SyndromeObservation obs;
    obs.raw.resize(m);
    obs.hard_sign.resize(m);
    obs.llr.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ideal = syndrome_bits.get(i) ? -1.0 : 1.0;
        const double raw = sigma > 0.0 ? ideal + sigma * gauss01(rng) : ideal;
        obs.raw[i] = raw;
        obs.hard_sign[i] = raw < 0.0 ? -1 : 1;
        obs.llr[i] = syndrome_llr(raw, sigma, llr_sat);
    }
    return obs;
}

}  // namespace qsynd
