// Command-line frontend: code construction, validation, single-shot decoding
// and Monte-Carlo sweeps.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsynd/css.hpp"
#include "qsynd/decoder.hpp"
#include "qsynd/experiment_io.hpp"
#include "qsynd/gf2_io.hpp"
#include "qsynd/harness.hpp"
#include "qsynd/noise.hpp"
#include "qsynd/qc_base.hpp"

namespace {

using namespace qsynd;

struct CodeOptions {
    bool tanner = false;
    std::string preset;
    std::string base_a, base_b;
    std::string hx, hz;
};

void add_code_options(CLI::App& cmd, CodeOptions& opts) {
    cmd.add_flag("--tanner", opts.tanner, "Use the lp_tanner preset");
    cmd.add_option("--preset", opts.preset, "Code preset (lp_tanner, hgp_rep3)");
    cmd.add_option("--base-a", opts.base_a, "QC base matrix JSON, left factor");
    cmd.add_option("--base-b", opts.base_b, "QC base matrix JSON, right factor");
    cmd.add_option("--hx", opts.hx, "X parity-check matrix (alist)");
    cmd.add_option("--hz", opts.hz, "Z parity-check matrix (alist)");
}

CodeSelection to_selection(const CodeOptions& opts) {
    CodeSelection selection;
    selection.preset = opts.tanner ? "lp_tanner" : opts.preset;
    selection.base_a_path = opts.base_a;
    selection.base_b_path = opts.base_b;
    selection.hx_alist_path = opts.hx;
    selection.hz_alist_path = opts.hz;
    selection.validate();
    return selection;
}

struct DecoderOptions {
    std::string mode = "soft";
    double beta = 0.75;
    double gamma_cutoff = 5.0;
    int l_max = 100;
    double llr_sat = 30.0;
    std::string prior = "depolarizing_marginal";
    bool static_check_inputs = false;
};

void add_decoder_options(CLI::App& cmd, DecoderOptions& opts) {
    cmd.add_option("--mode", opts.mode,
                   "perfect | hard | soft | soft_no_reliability (default soft)");
    cmd.add_option("--beta", opts.beta, "Min-sum normalization factor");
    cmd.add_option("--gamma-cutoff", opts.gamma_cutoff, "Syndrome reliability cutoff");
    cmd.add_option("--l-max", opts.l_max, "Maximum decoding iterations");
    cmd.add_option("--llr-sat", opts.llr_sat, "Symmetric LLR clamp");
    cmd.add_option("--prior", opts.prior, "depolarizing_marginal | bernoulli_p");
    cmd.add_flag("--static-check-inputs", opts.static_check_inputs,
                 "Keep check updates on the measured syndrome instead of the "
                 "evolving belief");
}

DecoderConfig to_decoder_config(const DecoderOptions& opts) {
    DecoderConfig config;
    config.mode = mode_from_string(opts.mode);
    config.beta = opts.beta;
    config.gamma_cutoff = opts.gamma_cutoff;
    config.max_iterations = opts.l_max;
    config.llr_sat = opts.llr_sat;
    config.prior_mode = prior_mode_from_string(opts.prior);
    config.evolving_check_inputs = !opts.static_check_inputs;
    config.validate();
    return config;
}

std::optional<std::uint64_t> seed_from_env() {
    const char* value = std::getenv("QSYND_SEED");
    if (value == nullptr || *value == '\0') {
        return std::nullopt;
    }
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw std::runtime_error("QSYND_SEED must be an unsigned integer");
    }
}

int cmd_build_code(const CodeOptions& code_opts, const std::string& out_dir) {
    const CssCode code = build_code(to_selection(code_opts));
    const CssValidationReport report = css_validate(code);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        write_alist(code.h_x, dir / "hx.alist");
        write_alist(code.h_z, dir / "hz.alist");
    }
    std::cout << "n=" << code.n << " k=" << code.k
              << " css=" << (report.passed() ? "ok" : "fail") << '\n';
    return report.passed() ? 0 : 1;
}

void print_profile(const char* label, const DegreeProfile& profile) {
    std::cout << label << ':';
    for (const auto& [degree, count] : profile.histogram) {
        std::cout << ' ' << degree << "x" << count;
    }
    std::cout << '\n';
}

int cmd_validate(const CodeOptions& code_opts) {
    const CssCode code = build_code(to_selection(code_opts));
    const CssValidationReport report = css_validate(code);
    std::cout << "n=" << code.n << " k=" << code.k
              << " commutes=" << (report.commutes ? "yes" : "no") << '\n';
    print_profile("hx row degrees", report.h_x_rows);
    print_profile("hx col degrees", report.h_x_cols);
    print_profile("hz row degrees", report.h_z_rows);
    print_profile("hz col degrees", report.h_z_cols);
    if (!report.commutes) {
        std::cout << "violations=" << report.violations.size() << '\n';
        for (std::size_t i = 0; i < report.violations.size() && i < 10; ++i) {
            std::cout << "  hx row " << report.violations[i].first << " anticommutes with hz row "
                      << report.violations[i].second << '\n';
        }
    }
    return report.passed() ? 0 : 1;
}

struct DecodeOneOptions {
    CodeOptions code;
    DecoderOptions decoder;
    double p = 0.05;
    double sigma = 0.0;
    std::uint64_t error_seed = 1;
    std::uint64_t trial = 0;
    std::string error_file;
    std::string trace_path;
    std::string dump_noise_path;
};

int cmd_decode_one(const DecodeOneOptions& opts) {
    const CodeContext ctx(build_code(to_selection(opts.code)));
    const CssCode& code = ctx.code();
    const DecoderConfig config = to_decoder_config(opts.decoder);
    const NoiseParams noise{opts.p, opts.sigma};
    noise.validate();

    Rng rng = make_trial_rng(opts.error_seed, 0, opts.trial);
    PauliErrorVector e;
    if (opts.error_file.empty()) {
        e = sample_depolarizing(code.n, noise.p, rng);
    } else {
        std::ifstream in(opts.error_file);
        if (!in) {
            throw std::runtime_error("cannot open for reading: " + opts.error_file);
        }
        std::string line_x, line_z;
        if (!std::getline(in, line_x) || !std::getline(in, line_z)) {
            throw std::runtime_error("error file must hold two 0/1 lines (e_x, e_z)");
        }
        e.e_x = BitVector::from_string(line_x);
        e.e_z = BitVector::from_string(line_z);
        if (e.e_x.size() != code.n || e.e_z.size() != code.n) {
            throw std::runtime_error("error file length does not match the code");
        }
    }

    const BitVector s_x = ideal_syndrome(code.h_z, e.e_x);
    const BitVector s_z = ideal_syndrome(code.h_x, e.e_z);
    const double sigma_eff = config.mode == DecoderMode::kPerfect ? 0.0 : noise.sigma;
    const SyndromeObservation obs_x = observe_syndrome(s_x, sigma_eff, config.llr_sat, rng);
    const SyndromeObservation obs_z = observe_syndrome(s_z, sigma_eff, config.llr_sat, rng);

    if (!opts.dump_noise_path.empty()) {
        std::ofstream out(opts.dump_noise_path);
        if (!out) {
            throw std::runtime_error("cannot open for writing: " + opts.dump_noise_path);
        }
        out << "trial,side,check,raw,llr\n";
        const auto dump_side = [&](char side, const SyndromeObservation& obs) {
            for (std::size_t i = 0; i < obs.checks(); ++i) {
                out << opts.trial << ',' << side << ',' << i << ','
                    << format_double(obs.raw[i]) << ',' << format_double(obs.llr[i])
                    << '\n';
            }
        };
        dump_side('x', obs_x);
        dump_side('z', obs_z);
    }

    std::ofstream trace;
    std::ostream* trace_ptr = nullptr;
    if (!opts.trace_path.empty()) {
        trace.open(opts.trace_path);
        if (!trace) {
            throw std::runtime_error("cannot open for writing: " + opts.trace_path);
        }
        trace_ptr = &trace;
    }

    const std::vector<double> prior =
        error_prior_llr(code.n, noise.p, config.prior_mode, config.llr_sat);
    if (trace_ptr != nullptr) {
        *trace_ptr << "# side=x\n";
    }
    const DecodeResult res_x =
        decode(ctx.graph_for_x(), code.h_z, prior, obs_x, config, trace_ptr);
    if (trace_ptr != nullptr) {
        *trace_ptr << "# side=z\n";
    }
    const DecodeResult res_z =
        decode(ctx.graph_for_z(), code.h_x, prior, obs_z, config, trace_ptr);

    const TrialClassification cls = classify(ctx, e, res_x.x_hat, res_z.x_hat);
    std::cout << "code: " << code.name << " n=" << code.n << " k=" << code.k << '\n';
    std::cout << "mode: " << to_string(config.mode) << " p=" << noise.p
              << " sigma=" << noise.sigma << '\n';
    std::cout << "x side: converged=" << res_x.converged
              << " iterations=" << res_x.iterations
              << " residual_weight=" << (e.e_x ^ res_x.x_hat).weight() << '\n';
    std::cout << "z side: converged=" << res_z.converged
              << " iterations=" << res_z.iterations
              << " residual_weight=" << (e.e_z ^ res_z.x_hat).weight() << '\n';
    std::cout << "x_hat_x: " << res_x.x_hat.to_string() << '\n';
    std::cout << "x_hat_z: " << res_z.x_hat.to_string() << '\n';
    std::cout << "classification: "
              << (cls == TrialClassification::kSuccess ? "success" : "logical_error")
              << '\n';
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              unsigned workers) {
    ExperimentConfig config = read_experiment_config(config_path);
    if (const auto seed = seed_from_env()) {
        config.master_seed = *seed;
    }
    const auto progress = [](const AggregateStats& stats) {
        std::cerr << "[" << to_string(stats.mode) << " p=" << stats.p
                  << " sigma=" << stats.sigma << "] trials=" << stats.trials
                  << " errors=" << stats.logical_errors << " ler=" << stats.ler << '\n';
    };
    const std::vector<AggregateStats> stats = run_experiment(config, workers, progress);
    if (out_path == "-") {
        write_sweep_csv(std::cout, config, stats);
    } else {
        write_sweep_csv(std::filesystem::path(out_path), config, stats);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Syndrome-based decoding toolkit for CSS LDPC codes"};
    app.require_subcommand(1);

    CodeOptions build_opts;
    std::string build_out_dir;
    CLI::App* build_cmd = app.add_subcommand(
        "build-code", "Construct a code and report n, k and commutation");
    add_code_options(*build_cmd, build_opts);
    build_cmd->add_option("--out", build_out_dir, "Directory for hx.alist / hz.alist");

    CodeOptions validate_opts;
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "Check commutation and report degree profiles");
    add_code_options(*validate_cmd, validate_opts);

    DecodeOneOptions decode_opts;
    CLI::App* decode_cmd = app.add_subcommand("decode-one", "Decode a single sampled trial");
    add_code_options(*decode_cmd, decode_opts.code);
    add_decoder_options(*decode_cmd, decode_opts.decoder);
    decode_cmd->add_option("--p", decode_opts.p, "Depolarizing strength");
    decode_cmd->add_option("--sigma", decode_opts.sigma, "Syndrome noise strength");
    decode_cmd->add_option("--error-seed", decode_opts.error_seed, "Trial seed");
    decode_cmd->add_option("--trial", decode_opts.trial, "Trial counter under the seed");
    decode_cmd->add_option("--error-file", decode_opts.error_file,
                           "Read the error from a file (two 0/1 lines) instead of sampling");
    decode_cmd->add_option("--trace", decode_opts.trace_path,
                           "Write per-iteration message CSV to this path");
    decode_cmd->add_option("--dump-noise", decode_opts.dump_noise_path,
                           "Write per-check raw syndrome values and LLRs as CSV");

    std::string sweep_config, sweep_out = "-";
    unsigned sweep_workers = 1;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a Monte-Carlo sweep");
    sweep_cmd->add_option("--config", sweep_config, "Experiment config JSON")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path, '-' for stdout");
    sweep_cmd->add_option("--workers", sweep_workers, "Worker thread count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_cmd->parsed()) {
            return cmd_build_code(build_opts, build_out_dir);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(validate_opts);
        }
        if (decode_cmd->parsed()) {
            return cmd_decode_one(decode_opts);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_config, sweep_out, sweep_workers);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
