#include "qsynd/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qsynd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) {
    return x < 0.0 ? -1.0 : 1.0;
}

struct ExtrinsicMins {
    double min1 = kInf;      // smallest |nu| over the check's edges
    double min2 = kInf;      // second smallest
    std::uint32_t argmin = 0;
    double sign_prod = 1.0;  // product of sgn(nu) over the check's edges
};

ExtrinsicMins scan_check(const DecoderState& state, const TannerGraph& graph,
                         std::uint32_t check) {
    ExtrinsicMins m;
    const std::uint32_t begin = graph.check_edge_begin[check];
    const std::uint32_t end = graph.check_edge_begin[check + 1];
    for (std::uint32_t e = begin; e < end; ++e) {
        const double nu = state.nu[e];
        m.sign_prod *= sgn(nu);
        const double mag = std::abs(nu);
        if (mag < m.min1) {
            m.min2 = m.min1;
            m.min1 = mag;
            m.argmin = e;
        } else if (mag < m.min2) {
            m.min2 = mag;
        }
    }
    return m;
}

}  // namespace

void DecoderConfig::validate() const {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("DecoderConfig: beta must be in (0, 1]");
    }
    if (!(gamma_cutoff >= 0.0)) {
        throw std::invalid_argument("DecoderConfig: gamma_cutoff must be non-negative");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("DecoderConfig: max_iterations must be at least 1");
    }
    if (!(llr_sat > 0.0)) {
        throw std::invalid_argument("DecoderConfig: llr_sat must be positive");
    }
}

TannerGraph build_graph(const SparseBitMatrix& h) {
    TannerGraph g;
    g.num_checks = h.rows();
    g.num_vars = h.cols();
    const std::size_t edges = h.nnz();
    g.check_edge_begin.resize(g.num_checks + 1);
    g.edge_var.reserve(edges);
    g.edge_check.reserve(edges);
    for (std::size_t r = 0; r < g.num_checks; ++r) {
        g.check_edge_begin[r] = static_cast<std::uint32_t>(g.edge_var.size());
        for (std::uint32_t c : h.row(r)) {
            g.edge_var.push_back(c);
            g.edge_check.push_back(static_cast<std::uint32_t>(r));
        }
    }
    g.check_edge_begin[g.num_checks] = static_cast<std::uint32_t>(edges);

    g.var_edge_begin.assign(g.num_vars + 1, 0);
    for (std::uint32_t v : g.edge_var) {
        ++g.var_edge_begin[v + 1];
    }
    for (std::size_t v = 0; v < g.num_vars; ++v) {
        g.var_edge_begin[v + 1] += g.var_edge_begin[v];
    }
    g.var_edge_ids.resize(edges);
    std::vector<std::uint32_t> cursor(g.var_edge_begin.begin(), g.var_edge_begin.end() - 1);
    for (std::uint32_t e = 0; e < edges; ++e) {
        g.var_edge_ids[cursor[g.edge_var[e]]++] = e;
    }
    return g;
}

std::vector<double> error_prior_llr(std::size_t n, double p, PriorMode prior_mode,
                                    double llr_sat) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error_prior_llr: p must be in [0, 1]");
    }
    if (!(llr_sat > 0.0)) {
        throw std::invalid_argument("error_prior_llr: llr_sat must be positive");
    }
    const double q = prior_mode == PriorMode::kDepolarizingMarginal ? 2.0 * p / 3.0 : p;
    double lambda;
    if (q <= 0.0) {
        lambda = llr_sat;
    } else if (q >= 1.0) {
        lambda = -llr_sat;
    } else {
        lambda = std::clamp(std::log((1.0 - q) / q), -llr_sat, llr_sat);
    }
    return std::vector<double>(n, lambda);
}

DecoderState init_state(const TannerGraph& graph, std::span<const double> prior,
                        const SyndromeObservation& obs, const DecoderConfig& config) {
    config.validate();
    if (prior.size() != graph.num_vars) {
        throw std::invalid_argument("init_state: prior length mismatch");
    }
    if (obs.checks() != graph.num_checks) {
        throw std::invalid_argument("init_state: observation length mismatch");
    }
    DecoderState state;
    state.prior.assign(prior.begin(), prior.end());
    state.nu.resize(graph.num_edges());
    for (std::size_t e = 0; e < graph.num_edges(); ++e) {
        state.nu[e] = state.prior[graph.edge_var[e]];
    }
    state.mu.assign(graph.num_edges(), 0.0);
    state.s_meas = obs.hard_sign;
    state.gamma_meas.resize(obs.checks());
    for (std::size_t i = 0; i < obs.checks(); ++i) {
        state.gamma_meas[i] = std::abs(obs.llr[i]);
    }
    if (config.mode == DecoderMode::kPerfect) {
        state.gamma_meas.assign(obs.checks(), config.llr_sat);
    }
    state.s_belief = state.s_meas;
    state.gamma_belief = state.gamma_meas;
    return state;
}

void variable_update(DecoderState& state, const TannerGraph& graph,
                     const DecoderConfig& config) {
    for (std::size_t v = 0; v < graph.num_vars; ++v) {
        const std::uint32_t begin = graph.var_edge_begin[v];
        const std::uint32_t end = graph.var_edge_begin[v + 1];
        double total = state.prior[v];
        for (std::uint32_t k = begin; k < end; ++k) {
            total += state.mu[graph.var_edge_ids[k]];
        }
        for (std::uint32_t k = begin; k < end; ++k) {
            const std::uint32_t e = graph.var_edge_ids[k];
            state.nu[e] = std::clamp(total - state.mu[e], -config.llr_sat, config.llr_sat);
        }
    }
}

void check_update_standard(DecoderState& state, const TannerGraph& graph,
                           const DecoderConfig& config) {
    for (std::size_t i = 0; i < graph.num_checks; ++i) {
        const ExtrinsicMins m = scan_check(state, graph, static_cast<std::uint32_t>(i));
        const double s = state.s_meas[i];
        const std::uint32_t begin = graph.check_edge_begin[i];
        const std::uint32_t end = graph.check_edge_begin[i + 1];
        for (std::uint32_t e = begin; e < end; ++e) {
            const double ext_min = e == m.argmin ? m.min2 : m.min1;
            const double ext_sign = m.sign_prod * sgn(state.nu[e]);
            state.mu[e] = std::clamp(config.beta * s * ext_sign * ext_min,
                                     -config.llr_sat, config.llr_sat);
        }
    }
}

void check_update_soft(DecoderState& state, const TannerGraph& graph,
                       const DecoderConfig& config) {
    for (std::size_t i = 0; i < graph.num_checks; ++i) {
        const ExtrinsicMins m = scan_check(state, graph, static_cast<std::uint32_t>(i));
        const double g = config.evolving_check_inputs ? state.gamma_belief[i]
                                                      : state.gamma_meas[i];
        const double t = config.evolving_check_inputs ? state.s_belief[i]
                                                      : state.s_meas[i];
        const bool reliable = g > config.gamma_cutoff;
        const std::uint32_t begin = graph.check_edge_begin[i];
        const std::uint32_t end = graph.check_edge_begin[i + 1];
        for (std::uint32_t e = begin; e < end; ++e) {
            double mag = e == m.argmin ? m.min2 : m.min1;
            if (!reliable) {
                mag = std::min(mag, g);
            }
            const double ext_sign = m.sign_prod * sgn(state.nu[e]);
            state.mu[e] = std::clamp(config.beta * t * ext_sign * mag,
                                     -config.llr_sat, config.llr_sat);
        }
    }
}

void syndrome_belief_update(DecoderState& state, const TannerGraph& graph,
                            const DecoderConfig& config) {
    for (std::size_t i = 0; i < graph.num_checks; ++i) {
        const ExtrinsicMins m = scan_check(state, graph, static_cast<std::uint32_t>(i));
        const double min_all = std::min(m.min1, config.llr_sat);
        const std::int8_t prod_all = m.sign_prod < 0.0 ? -1 : 1;
        if (min_all <= state.gamma_belief[i]) {
            continue;
        }
        if (prod_all == state.s_belief[i]) {
            if (config.mode != DecoderMode::kSoftNoReliability) {
                state.gamma_belief[i] = min_all;
            }
        } else {
            state.s_belief[i] = -state.s_belief[i];
        }
    }
}

BitVector decide(const DecoderState& state, const TannerGraph& graph) {
    BitVector x_hat(graph.num_vars);
    for (std::size_t v = 0; v < graph.num_vars; ++v) {
        double total = state.prior[v];
        const std::uint32_t begin = graph.var_edge_begin[v];
        const std::uint32_t end = graph.var_edge_begin[v + 1];
        for (std::uint32_t k = begin; k < end; ++k) {
            total += state.mu[graph.var_edge_ids[k]];
        }
        if (total < 0.0) {
            x_hat.set(v, true);
        }
    }
    return x_hat;
}

bool halt_check(const BitVector& x_hat, const SparseBitMatrix& h,
                std::span<const std::int8_t> target_signs) {
    if (x_hat.size() != h.cols() || target_signs.size() != h.rows()) {
        throw std::invalid_argument("halt_check: dimension mismatch");
    }
    for (std::size_t r = 0; r < h.rows(); ++r) {
        unsigned parity = 0;
        for (std::uint32_t c : h.row(r)) {
            parity ^= static_cast<unsigned>(x_hat.get(c));
        }
        const std::int8_t sign = parity != 0 ? -1 : 1;
        if (sign != target_signs[r]) {
            return false;
        }
    }
    return true;
}

namespace {

void trace_iteration(std::ostream& out, int iteration, const DecoderState& state,
                     const TannerGraph& graph,
                     const std::vector<std::int8_t>& s_before) {
    for (std::size_t e = 0; e < graph.num_edges(); ++e) {
        out << "edge," << iteration << ',' << e << ',' << graph.edge_check[e] << ','
            << graph.edge_var[e] << ',' << state.nu[e] << ',' << state.mu[e] << '\n';
    }
    for (std::size_t i = 0; i < graph.num_checks; ++i) {
        if (state.s_belief[i] != s_before[i]) {
            out << "flip," << iteration << ",," << i << ",,"
                << static_cast<int>(s_before[i]) << ','
                << static_cast<int>(state.s_belief[i]) << '\n';
        }
    }
}

}  // namespace

DecodeResult decode(const TannerGraph& graph, const SparseBitMatrix& h,
                    std::span<const double> prior, const SyndromeObservation& obs,
                    const DecoderConfig& config, std::ostream* trace) {
    if (h.rows() != graph.num_checks || h.cols() != graph.num_vars) {
        throw std::invalid_argument("decode: graph and matrix disagree");
    }
    DecoderState state = init_state(graph, prior, obs, config);
    const bool soft = config.mode == DecoderMode::kSoft ||
                      config.mode == DecoderMode::kSoftNoReliability;

    if (trace != nullptr) {
        *trace << "record,iteration,edge,check,var,nu_or_sign_before,mu_or_sign_after\n";
    }

    DecodeResult result;
    std::vector<std::int8_t> s_before;
    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
        if (trace != nullptr) {
            s_before = state.s_belief;
        }
        variable_update(state, graph, config);
        if (soft) {
            check_update_soft(state, graph, config);
            syndrome_belief_update(state, graph, config);
        } else {
            check_update_standard(state, graph, config);
        }
        result.x_hat = decide(state, graph);
        if (trace != nullptr) {
            trace_iteration(*trace, iteration, state, graph, s_before);
        }
        const auto& target = soft ? state.s_belief : state.s_meas;
        if (halt_check(result.x_hat, h, target)) {
            result.converged = true;
            result.iterations = iteration;
            break;
        }
    }
    if (!result.converged) {
        result.iterations = config.max_iterations;
    }
    const auto& target = soft ? state.s_belief : state.s_meas;
    result.revised_syndrome = BitVector(graph.num_checks);
    for (std::size_t i = 0; i < graph.num_checks; ++i) {
        if (target[i] < 0) {
            result.revised_syndrome.set(i, true);
        }
    }
    return result;
}

}  // namespace qsynd
