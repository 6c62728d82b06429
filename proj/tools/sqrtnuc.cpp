// sqrtnuc: simulate, estimate and verify the square-root nuclear-norm estimators.
//
//   sqrtnuc simulate completion [flags]
//   sqrtnuc estimate completion --obs data.csv --m1 .. --m2 .. [--a ..] [flags]
//   sqrtnuc simulate regression [flags]
//   sqrtnuc estimate regression --predictors V.csv --responses U.csv [flags]
//   sqrtnuc verify <suite>|all [--seed --threads --trials --out]
//
// Exit status: 0 success, 1 a verification check failed, 2 usage error,
// 3 runtime or I/O error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqrtnuc/harness.hpp"

namespace {

using namespace sqrtnuc;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError("bad value for " + key + ": '" + text + "'");
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw UsageError("bad value for " + key + ": '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
    if (text == "0" || text == "false" || text == "no" || text == "off") return false;
    throw UsageError("bad value for " + key + ": '" + text + "'");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& v) {
    if (key == "m1") cfg.m1 = parse_number<int>(key, v);
    else if (key == "m2") cfg.m2 = parse_number<int>(key, v);
    else if (key == "l") cfg.l = parse_number<int>(key, v);
    else if (key == "n") cfg.n = parse_number<std::size_t>(key, v);
    else if (key == "rank") cfg.rank = parse_number<int>(key, v);
    else if (key == "sigma") cfg.sigma = parse_number<double>(key, v);
    else if (key == "noise") cfg.noise = parse_noise_law(v);
    else if (key == "a") {
        cfg.a = parse_number<double>(key, v);
        cfg.a_given = true;
    } else if (key == "lambda") cfg.lambda = parse_lambda(v);
    else if (key == "cstar") cfg.c_star = parse_number<double>(key, v);
    else if (key == "alpha") cfg.alpha = parse_number<double>(key, v);
    else if (key == "beta") cfg.beta = parse_number<double>(key, v);
    else if (key == "rho") cfg.rho = parse_number<double>(key, v);
    else if (key == "trials") cfg.trials = parse_number<int>(key, v);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "threads") cfg.threads = parse_number<int>(key, v);
    else if (key == "out") cfg.out = v;
    else if (key == "obs") cfg.obs = v;
    else if (key == "truth") cfg.truth = v;
    else if (key == "predictors") cfg.predictors = v;
    else if (key == "responses") cfg.responses = v;
    else if (key == "timing") cfg.timing = parse_bool(key, v);
    else if (key == "design") {
        if (v == "random") cfg.design = DesignSource::Random;
        else if (v == "grid") cfg.design = DesignSource::Grid;
        else throw UsageError("bad value for design: '" + v + "' (random or grid)");
    } else {
        throw UsageError("unknown setting '" + key + "'");
    }
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

int run_verify(ExperimentConfig cfg, const std::string& which) {
    std::vector<std::string> names;
    if (which == "all") names = suite_names();
    else names.push_back(which);
    bool all_passed = true;
    std::string csv;
    for (const auto& name : names) {
        cfg.suite = name;
        cfg.validate();
        const SuiteReport rep = verify_suite(name, cfg);
        std::cout << "== " << rep.name << '\n';
        for (const auto& line : rep.lines) std::cout << line << '\n';
        std::cout << (rep.passed ? "PASS " : "FAIL ") << rep.name << '\n';
        all_passed = all_passed && rep.passed;
        csv += rep.csv;
    }
    if (!cfg.out.empty()) write_or_print(cfg.out, csv);
    return all_passed ? 0 : 1;
}

int run(int argc, char** argv) {
    CLI::App app{"Square-root nuclear-norm estimators for matrix completion and trace regression"};
    app.set_version_flag("--version", std::string(kCsvSchema));

    std::string command, target;
    app.add_option("command", command, "simulate | estimate | verify")
        ->required()
        ->check(CLI::IsMember({"simulate", "estimate", "verify"}));
    app.add_option("target", target, "completion | regression, or a suite name (or all) for verify")->required();

    std::string config_path;
    app.add_option("--config", config_path, "key=value file; flags given on the command line win")
        ->check(CLI::ExistingFile);

    struct Flag {
        std::string key;
        std::string value;
        CLI::Option* opt{};
    };
    std::vector<Flag> flags = {
        {"m1", {}, nullptr},     {"m2", {}, nullptr},       {"l", {}, nullptr},          {"n", {}, nullptr},
        {"rank", {}, nullptr},   {"sigma", {}, nullptr},    {"noise", {}, nullptr},      {"a", {}, nullptr},
        {"lambda", {}, nullptr}, {"cstar", {}, nullptr},    {"alpha", {}, nullptr},      {"beta", {}, nullptr},
        {"rho", {}, nullptr},    {"trials", {}, nullptr},   {"seed", {}, nullptr},       {"threads", {}, nullptr},
        {"out", {}, nullptr},    {"obs", {}, nullptr},      {"truth", {}, nullptr},      {"predictors", {}, nullptr},
        {"responses", {}, nullptr}, {"design", {}, nullptr}};
    const std::map<std::string, std::string> help = {
        {"m1", "rows (completion) or predictor columns (regression)"},
        {"m2", "columns (completion) or response columns (regression)"},
        {"l", "regression sample size"},
        {"n", "number of observations"},
        {"rank", "rank of the simulated truth"},
        {"sigma", "noise level"},
        {"noise", "gaussian | rademacher | uniform"},
        {"a", "entry bound of the truth"},
        {"lambda", "theory | oracle | manual:<x>"},
        {"cstar", "sub-Gaussian constant c* (default 6.5)"},
        {"alpha", "regression lambda confidence alpha (default 0.1)"},
        {"beta", "regression lambda confidence beta (default 0.5)"},
        {"rho", "rho used for the reported regression rank condition"},
        {"trials", "Monte Carlo trials (verify: 0 or unset keeps the suite default)"},
        {"seed", "master seed"},
        {"threads", "worker threads, 0 = all cores"},
        {"out", "output path (CSV of trials, estimated matrix, or suite records)"},
        {"obs", "observation file, row,col,value per line"},
        {"truth", "true matrix CSV, to report the error of an estimate"},
        {"predictors", "regression predictor matrix V (CSV)"},
        {"responses", "regression response matrix U (CSV)"},
        {"design", "random | grid (every cell once)"}};
    for (auto& f : flags) f.opt = app.add_option("--" + f.key, f.value, help.at(f.key));
    bool timing = false;
    app.add_flag("--timing", timing, "add a wall_ms column to simulation CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ExperimentConfig cfg;
    if (command == "verify") cfg.trials = 0;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open " + config_path);
            for (const auto& [key, value] : read_key_value_file(in)) apply_setting(cfg, key, value);
        }
        for (const auto& f : flags)
            if (f.opt->count()) apply_setting(cfg, f.key, f.value);
        if (timing) cfg.timing = true;

        if (command == "verify") {
            cfg.mode = Mode::Verify;
            if (target != "all" && !std::count(suite_names().begin(), suite_names().end(), target)) {
                std::string list;
                for (const auto& s : suite_names()) list += " " + s;
                throw UsageError("unknown suite '" + target + "'; known:" + list + " all");
            }
            return run_verify(cfg, target);
        }
        if (target != "completion" && target != "regression")
            throw UsageError("target must be completion or regression");
        const bool completion = target == "completion";
        if (command == "simulate") {
            cfg.mode = completion ? Mode::SimulateCompletion : Mode::SimulateRegression;
            cfg.validate();
            const ExperimentResult res = run_experiment(cfg);
            if (cfg.out.empty()) std::cout << res.csv;
            else std::cerr << "wrote " << res.summary.trials << " trials to " << cfg.out << '\n';
            return 0;
        }
        cfg.mode = completion ? Mode::EstimateCompletion : Mode::EstimateRegression;
        cfg.validate();
        std::ostream& log = cfg.out.empty() ? std::cerr : std::cout;
        if (completion) {
            const std::string out = cfg.out;
            cfg.out.clear();
            const CompletionEstimateOutput res = run_estimate_completion(cfg);
            if (out.empty()) write_matrix_csv(std::cout, res.report.A_hat);
            else write_matrix_csv(out, res.report.A_hat);
            log << "lambda " << res.report.lambda << "\nrank " << res.report.rank_hat << "\nobjective "
                << res.report.objective << "\nresidual " << res.report.residual_fro << '\n';
            if (res.per_entry_error) log << "per_entry_error " << *res.per_entry_error << '\n';
        } else {
            const std::string out = cfg.out;
            cfg.out.clear();
            const RegressionEstimate est = run_estimate_regression(cfg);
            if (out.empty()) write_matrix_csv(std::cout, est.A_hat);
            else write_matrix_csv(out, est.A_hat);
            log << "lambda " << est.lambda << "\nrank " << est.rank_VA << "\nobjective " << est.objective
                << "\nresidual " << est.residual << '\n';
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
