#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsynd/css.hpp"
#include "qsynd/gf2.hpp"
#include "qsynd/gf2_io.hpp"
#include "qsynd/qc_base.hpp"

using namespace qsynd;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "qsynd_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the CLI with the given argument string (optionally after env
// assignments) and captures exit code, stdout and stderr.
CommandResult run_cli(const std::string& args, const std::string& env_prefix = {}) {
    static int counter = 0;
    const auto dir = scratch_dir();
    const auto out_path = dir / ("stdout_" + std::to_string(counter) + ".txt");
    const auto err_path = dir / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;

    std::string cmd = env_prefix.empty() ? std::string() : env_prefix + " ";
    cmd += std::string(QSYND_CLI_PATH) + " " + args + " > " + out_path.string() +
           " 2> " + err_path.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);

    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

// Two all-zero error lines for the 13-qubit preset.
std::filesystem::path zero_error_file() {
    const auto path = scratch_dir() / "zero_error.txt";
    std::ofstream out(path);
    out << std::string(13, '0') << '\n' << std::string(13, '0') << '\n';
    return path;
}

std::filesystem::path write_sweep_config(const std::string& name, const std::string& body) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

const std::string kSmallSweepConfig = R"({
    "code": {"preset": "hgp_rep3"},
    "p_grid": [0.05], "sigma_grid": [0.0, 0.3],
    "modes": ["hard", "soft"],
    "stop": {"fixed_trials": 256},
    "master_seed": 1
})";

}  // namespace

TEST_CASE("build-code constructs the lifted-product preset and writes alists") {
    const auto out_dir = scratch_dir() / "lp_out";
    const CommandResult result = run_cli("build-code --tanner --out " + out_dir.string());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "n=1054 k=140 css=ok"));

    const SparseBitMatrix h_x = read_alist(out_dir / "hx.alist");
    const SparseBitMatrix h_z = read_alist(out_dir / "hz.alist");
    CHECK(h_x.rows() == 465);
    CHECK(h_x.cols() == 1054);
    CHECK(h_z.rows() == 465);
    CHECK(h_z.cols() == 1054);
}

TEST_CASE("build-code accepts base matrix JSON inputs") {
    const auto dir = scratch_dir();
    write_qc_base(repetition3_base(), dir / "rep3_a.json");
    write_qc_base(repetition3_base(), dir / "rep3_b.json");
    const CommandResult result =
        run_cli("build-code --base-a " + (dir / "rep3_a.json").string() + " --base-b " +
                (dir / "rep3_b.json").string());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "n=13 k=1 css=ok"));
}

TEST_CASE("build-code handles a trivial one-block base") {
    const auto dir = scratch_dir();
    QcBaseMatrix tiny(1, 1, 1);
    tiny.at(0, 0) = 0;
    write_qc_base(tiny, dir / "tiny.json");
    const CommandResult result =
        run_cli("build-code --base-a " + (dir / "tiny.json").string() + " --base-b " +
                (dir / "tiny.json").string());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "n=2 k=0 css=ok"));
}

TEST_CASE("build-code rejects malformed base JSON") {
    const auto path = scratch_dir() / "broken.json";
    std::ofstream(path) << "{ this is not json";
    const CommandResult result = run_cli("build-code --base-a " + path.string() +
                                         " --base-b " + path.string());
    CHECK(result.exit_code != 0);
    CHECK(contains(result.err, "error:"));
}

TEST_CASE("build-code rejects conflicting code sources") {
    const CommandResult result = run_cli("build-code --tanner --preset hgp_rep3 --hx a --hz b");
    CHECK(result.exit_code != 0);
    CHECK(contains(result.err, "error:"));
}

TEST_CASE("validate reports commutation and degree profiles") {
    const CommandResult result = run_cli("validate --preset lp_tanner");
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "n=1054 k=140 commutes=yes"));
    CHECK(contains(result.out, "hx row degrees: 8x465"));
    CHECK(contains(result.out, "hz row degrees: 8x465"));
    CHECK(contains(result.out, "hx col degrees:"));
}

TEST_CASE("validate flags an anticommuting pair") {
    const auto dir = scratch_dir();
    write_alist(SparseBitMatrix::from_dense(BitMatrix::from_rows({"11"})), dir / "bad_hx.alist");
    write_alist(SparseBitMatrix::from_dense(BitMatrix::from_rows({"10"})), dir / "bad_hz.alist");
    const CommandResult result = run_cli("validate --hx " + (dir / "bad_hx.alist").string() +
                                         " --hz " + (dir / "bad_hz.alist").string());
    CHECK(result.exit_code != 0);
    CHECK(contains(result.out, "commutes=no"));
    CHECK(contains(result.out, "violations=1"));
}

TEST_CASE("decode-one on a clean trial converges in one iteration") {
    const CommandResult result =
        run_cli("decode-one --preset hgp_rep3 --mode perfect --error-file " +
                zero_error_file().string());
    CHECK(result.exit_code == 0);
    CHECK(contains(result.out, "x side: converged=1 iterations=1 residual_weight=0"));
    CHECK(contains(result.out, "z side: converged=1 iterations=1 residual_weight=0"));
    CHECK(contains(result.out, "x_hat_x: 0000000000000"));
    CHECK(contains(result.out, "x_hat_z: 0000000000000"));
    CHECK(contains(result.out, "classification: success"));
}

TEST_CASE("decode-one is deterministic for a fixed seed and trial") {
    const std::string cmd = "decode-one --preset hgp_rep3 --mode soft --p 0.1 --sigma 0.4 "
                            "--error-seed 5 --trial 3";
    const CommandResult a = run_cli(cmd);
    const CommandResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "mode: soft p=0.1 sigma=0.4"));
}

TEST_CASE("decode-one writes trace and noise dumps") {
    const auto dir = scratch_dir();
    const auto trace_path = dir / "trace.csv";
    const auto noise_path = dir / "noise.csv";
    const CommandResult result =
        run_cli("decode-one --preset hgp_rep3 --mode perfect --error-file " +
                zero_error_file().string() + " --trace " + trace_path.string() +
                " --dump-noise " + noise_path.string());
    CHECK(result.exit_code == 0);

    const std::vector<std::string> trace = lines_of(slurp(trace_path));
    REQUIRE(trace.size() > 4);
    CHECK(trace[0] == "# side=x");
    CHECK(trace[1] == "record,iteration,edge,check,var,nu_or_sign_before,mu_or_sign_after");
    std::size_t edge_rows = 0;
    std::size_t header_rows = 0;
    for (const std::string& line : trace) {
        if (line.rfind("edge,", 0) == 0) {
            ++edge_rows;
            CHECK(split_csv(line).size() == 7);
        }
        if (line.rfind("record,", 0) == 0) {
            ++header_rows;
        }
    }
    CHECK(header_rows == 2);  // one per decoded side
    CHECK(edge_rows > 0);

    const std::vector<std::string> noise = lines_of(slurp(noise_path));
    // Header plus one row per check on each side (6 + 6 for this preset).
    REQUIRE(noise.size() == 13);
    CHECK(noise[0] == "trial,side,check,raw,llr");
    CHECK(noise[1] == "0,x,0,1,30");  // exact readout of a satisfied check
    CHECK(noise[7] == "0,z,0,1,30");
}

TEST_CASE("decode-one rejects an unknown mode") {
    const CommandResult result = run_cli("decode-one --preset hgp_rep3 --mode bogus");
    CHECK(result.exit_code != 0);
    CHECK(contains(result.err, "error:"));
}

TEST_CASE("sweep output is identical across worker counts") {
    const auto config = write_sweep_config("sweep_small.json", kSmallSweepConfig);
    const auto out1 = scratch_dir() / "sweep_w1.csv";
    const auto out4 = scratch_dir() / "sweep_w4.csv";

    const CommandResult first = run_cli("sweep --config " + config.string() + " --out " +
                                        out1.string() + " --workers 1");
    const CommandResult second = run_cli("sweep --config " + config.string() + " --out " +
                                         out4.string() + " --workers 4");
    CHECK(first.exit_code == 0);
    CHECK(second.exit_code == 0);
    CHECK(contains(first.err, "trials=256"));  // progress goes to stderr

    const std::string csv1 = slurp(out1);
    CHECK(csv1 == slurp(out4));

    const std::vector<std::string> lines = lines_of(csv1);
    REQUIRE(lines.size() == 6);  // schema comment, header, four grid points
    CHECK(lines[0] == "# qsynd sweep schema v1");
    CHECK(split_csv(lines[1]).size() == 14);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 14);
        CHECK(fields[0] == "hgp_rep3");
        CHECK(fields[7] == "256");
        CHECK(fields[13] == "1");
    }
}

TEST_CASE("sweep writes CSV to stdout by default") {
    const auto config = write_sweep_config("sweep_stdout.json", R"({
        "code": {"preset": "hgp_rep3"},
        "p_grid": [0.0], "sigma_grid": [0.0], "modes": ["soft"],
        "stop": {"fixed_trials": 64}
    })");
    const CommandResult result = run_cli("sweep --config " + config.string());
    CHECK(result.exit_code == 0);
    const std::vector<std::string> lines = lines_of(result.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "# qsynd sweep schema v1");
    const std::vector<std::string> fields = split_csv(lines[2]);
    REQUIRE(fields.size() == 14);
    CHECK(fields[8] == "0");   // logical_errors
    CHECK(fields[9] == "0");   // ler
    CHECK(fields[11] == "1");  // avg_iterations
}

TEST_CASE("QSYND_SEED overrides the configured master seed") {
    const auto config = write_sweep_config("sweep_seed.json", kSmallSweepConfig);
    const auto out_default = scratch_dir() / "sweep_seed1.csv";
    const auto out_env = scratch_dir() / "sweep_seed7.csv";

    run_cli("sweep --config " + config.string() + " --out " + out_default.string());
    const CommandResult env_run = run_cli(
        "sweep --config " + config.string() + " --out " + out_env.string(), "QSYND_SEED=7");
    CHECK(env_run.exit_code == 0);

    const std::vector<std::string> lines = lines_of(slurp(out_env));
    REQUIRE(lines.size() == 6);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        CHECK(split_csv(lines[i])[13] == "7");
    }
    CHECK(slurp(out_env) != slurp(out_default));
}

TEST_CASE("sweep rejects an invalid config") {
    const auto missing_stop = write_sweep_config("sweep_bad.json", R"({
        "code": {"preset": "hgp_rep3"},
        "p_grid": [0.05], "sigma_grid": [0.0], "modes": ["soft"]
    })");
    const CommandResult result = run_cli("sweep --config " + missing_stop.string());
    CHECK(result.exit_code != 0);
    CHECK(contains(result.err, "error:"));

    const CommandResult absent = run_cli("sweep --config /nonexistent/config.json");
    CHECK(absent.exit_code != 0);
    CHECK(contains(absent.err, "error:"));
}

TEST_CASE("the CLI requires a subcommand") {
    const CommandResult result = run_cli("");
    CHECK(result.exit_code != 0);
}
