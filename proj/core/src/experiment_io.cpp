#include "qsynd/experiment_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>

#include <nlohmann/json.hpp>

namespace qsynd {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return {buf, ptr};
}

namespace {

std::string resolve(const std::filesystem::path& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty()) {
        return path;
    }
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (base_dir / p).string();
}

CodeSelection parse_code(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    CodeSelection code;
    code.preset = j.value("preset", "");
    code.base_a_path = resolve(base_dir, j.value("base_a", ""));
    code.base_b_path = resolve(base_dir, j.value("base_b", ""));
    code.hx_alist_path = resolve(base_dir, j.value("hx_alist", ""));
    code.hz_alist_path = resolve(base_dir, j.value("hz_alist", ""));
    return code;
}

DecoderConfig parse_decoder(const nlohmann::json& j) {
    DecoderConfig decoder;
    decoder.beta = j.value("beta", decoder.beta);
    decoder.gamma_cutoff = j.value("gamma_cutoff", decoder.gamma_cutoff);
    decoder.max_iterations = j.value("l_max", decoder.max_iterations);
    decoder.llr_sat = j.value("llr_sat", decoder.llr_sat);
    if (j.contains("prior")) {
        decoder.prior_mode = prior_mode_from_string(j.at("prior").get<std::string>());
    }
    decoder.evolving_check_inputs =
        j.value("evolving_check_inputs", decoder.evolving_check_inputs);
    return decoder;
}

StopRule parse_stop(const nlohmann::json& j) {
    StopRule stop;
    stop.fixed_trials = j.value("fixed_trials", std::uint64_t{0});
    stop.target_logical_errors = j.value("target_logical_errors", std::uint64_t{0});
    stop.max_trials = j.value("max_trials", std::uint64_t{0});
    return stop;
}

}  // namespace

ExperimentConfig read_experiment_config(std::istream& in,
                                        const std::filesystem::path& base_dir) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("experiment config parse error: ") + e.what());
    }
    ExperimentConfig config;
    try {
        config.code = parse_code(j.at("code"), base_dir);
        config.p_grid = j.at("p_grid").get<std::vector<double>>();
        config.sigma_grid = j.at("sigma_grid").get<std::vector<double>>();
        for (const auto& name : j.at("modes")) {
            config.modes.push_back(mode_from_string(name.get<std::string>()));
        }
        if (j.contains("decoder")) {
            config.decoder = parse_decoder(j.at("decoder"));
        }
        config.stop = parse_stop(j.at("stop"));
        config.master_seed = j.value("master_seed", std::uint64_t{1});
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("experiment config parse error: ") + e.what());
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("experiment config invalid: ") + e.what());
    }
    return config;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path.string());
    }
    return read_experiment_config(in, path.parent_path());
}

void write_sweep_csv(std::ostream& out, const ExperimentConfig& config,
                     std::span<const AggregateStats> stats) {
    out << "# qsynd sweep schema v1\n";
    out << "code,mode,p,sigma,beta,gamma_cutoff,l_max,trials,logical_errors,ler,"
           "ler_stderr,avg_iterations,avg_iterations_converged,seed\n";
    for (const AggregateStats& row : stats) {
        out << row.code_name << ',' << to_string(row.mode) << ','
            << format_double(row.p) << ',' << format_double(row.sigma) << ','
            << format_double(config.decoder.beta) << ','
            << format_double(config.decoder.gamma_cutoff) << ','
            << config.decoder.max_iterations << ',' << row.trials << ','
            << row.logical_errors << ',' << format_double(row.ler) << ','
            << format_double(row.ler_stderr) << ','
            << format_double(row.avg_iterations) << ','
            << format_double(row.avg_iterations_converged) << ','
            << config.master_seed << '\n';
    }
    if (!out) {
        throw std::runtime_error("sweep CSV write failed");
    }
}

void write_sweep_csv(const std::filesystem::path& path, const ExperimentConfig& config,
                     std::span<const AggregateStats> stats) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    write_sweep_csv(out, config, stats);
}

}  // namespace qsynd
