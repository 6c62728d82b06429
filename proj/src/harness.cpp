#include "sqrtnuc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sqrtnuc/diagnostics.hpp"

namespace sqrtnuc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Relative slack for the deterministic inequality checks.
constexpr double kIneqTol = 1e-9;

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kIneqTol) + 1e-12; }
bool geq(double lhs, double rhs) { return lhs >= rhs * (1.0 - kIneqTol) - 1e-12; }

std::string num(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

double median_of(std::vector<double> v) {
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return kNaN;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::size_t rank_cap(double lambda) {
    return static_cast<std::size_t>(std::floor(1.0 / (lambda * lambda)));
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

class CsvWriter {
public:
    explicit CsvWriter(std::string_view kind) { out_ << "# " << kCsvSchema << ' ' << kind << '\n'; }

    void header(const std::vector<std::string>& cols) { row(cols); }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    void summary(const ExperimentSummary& s) {
        out_ << "summary,trials=" << s.trials << ",median_err=" << num(s.median_err) << ",mean_err=" << num(s.mean_err)
             << ",median_lambda=" << num(s.median_lambda) << ",rank_violations=" << s.rank_violations
             << ",certificate_violations=" << s.certificate_violations
             << ",theorem_applicable=" << s.theorem_applicable << ",theorem_violations=" << s.theorem_violations
             << ",residual_applicable=" << s.residual_applicable
             << ",residual_violations=" << s.residual_violations << '\n';
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string b(bool x) { return x ? "1" : "0"; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

LambdaChoice parse_lambda(std::string_view text) {
    if (text == "theory") return {LambdaMode::Theory, 0.0};
    if (text == "oracle") return {LambdaMode::Oracle, 0.0};
    constexpr std::string_view prefix = "manual:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view rest = text.substr(prefix.size());
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), x);
        if (ec == std::errc() && ptr == rest.data() + rest.size() && x > 0.0 && std::isfinite(x))
            return {LambdaMode::Manual, x};
    }
    throw std::invalid_argument("lambda must be theory, oracle or manual:<positive number>, got '" +
                                std::string(text) + "'");
}

std::string to_string(const LambdaChoice& c) {
    switch (c.mode) {
    case LambdaMode::Theory: return "theory";
    case LambdaMode::Oracle: return "oracle";
    case LambdaMode::Manual: return "manual:" + num(c.manual);
    }
    return "?";
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    const bool simulate = mode == Mode::SimulateCompletion || mode == Mode::SimulateRegression;
    if (mode == Mode::Verify) {
        if (suite.empty()) fail("verify needs a suite name");
        if (trials < 0) fail("trials must be >= 0");
    } else if (trials < 1) {
        fail("trials must be >= 1");
    }
    if (m1 < 1 || m2 < 1 || l < 1) fail("dimensions must be >= 1");
    if (rank < 0) fail("rank must be >= 0");
    if (!(sigma >= 0.0)) fail("sigma must be >= 0");
    if (!(a > 0.0)) fail("a must be > 0");
    if (!(c_star > 0.0)) fail("cstar must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
    if (!(beta > 0.0)) fail("beta must be > 0");
    if (!(rho > 0.0 && rho < 1.0)) fail("rho must lie in (0, 1)");
    if (threads < 0) fail("threads must be >= 0");
    if (lambda.mode == LambdaMode::Oracle && !simulate && mode != Mode::Verify)
        fail("lambda=oracle needs the true matrix and is only valid in simulate modes");
    switch (mode) {
    case Mode::SimulateCompletion:
        if (rank > std::min(m1, m2)) fail("rank exceeds min(m1, m2)");
        if (design == DesignSource::Random && n < 1) fail("n must be >= 1");
        break;
    case Mode::SimulateRegression:
        if (rank > std::min(m1, m2)) fail("rank exceeds min(m1, m2)");
        break;
    case Mode::EstimateCompletion:
        if (obs.empty()) fail("estimate completion needs --obs");
        if (lambda.mode == LambdaMode::Theory && !a_given) fail("the theory lambda needs --a in estimation mode");
        break;
    case Mode::EstimateRegression:
        if (predictors.empty() || responses.empty())
            fail("estimate regression needs --predictors and --responses");
        break;
    case Mode::Verify:
        break;
    }
}

void parallel_for(int count, int threads, const std::function<void(int)>& f) {
    if (count <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    int workers = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (int i; (i = next.fetch_add(1)) < count;) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    if (error) std::rethrow_exception(error);
}

CompletionTrial run_completion_trial(const ExperimentConfig& cfg, int trial_index) {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(trial_index));
    const GroundTruth truth = generate_low_rank_truth(cfg.m1, cfg.m2, cfg.rank, cfg.a, rng);
    const DesignList design = cfg.design == DesignSource::Grid ? full_grid_design(cfg.m1, cfg.m2)
                                                                : sample_design(cfg.m1, cfg.m2, cfg.n, rng);
    const CompletionDataset data = synthesize(truth, NoiseSpec{cfg.sigma, cfg.noise, 1.0}, design, rng);
    const Matrix X = build_X(data);
    const SvdFactors fx = svd(X);
    const DiagnosticsRecord diag = compute_diagnostics(data, truth);
    const double mu2 = data.mu2();

    CompletionTrial t;
    t.trial = trial_index;
    switch (cfg.lambda.mode) {
    case LambdaMode::Theory: t.lambda = lambda_theory(data, truth.a, cfg.c_star); break;
    case LambdaMode::Oracle:
        if (!(diag.fro_M > 0.0)) throw std::domain_error("oracle lambda undefined: X equals A0 exactly");
        t.lambda = 3.0 * diag.delta;
        break;
    case LambdaMode::Manual: t.lambda = cfg.lambda.manual; break;
    }

    const EstimateReport est = estimate_from_factors(fx, t.lambda);
    t.rank0 = truth.rank;
    t.rank_hat = est.rank_hat;
    t.rank_bound_ok = static_cast<std::size_t>(est.rank_hat) <= rank_cap(t.lambda);
    t.sq_err = (est.A_hat - truth.A0).squaredNorm();
    t.err = t.sq_err / mu2;
    t.residual_fro = est.residual_fro;
    t.objective = est.objective;

    const double fro_diff = (truth.A0 - X).norm();
    const double f_zero = X.norm();
    const double f_x = t.lambda * fx.singulars.sum();
    const double f_a0 = fro_diff + t.lambda * norm_schatten(truth.A0, Schatten::One);
    t.certificate_ok = leq(est.objective, std::min({f_zero, f_x, f_a0}));

    t.delta = diag.delta;
    t.delta_inf = diag.delta_inf;
    t.fro_M = diag.fro_M;
    t.fro_acc = diag.fro_acc;
    t.collisions = diag.collisions;
    t.spikiness = diag.spikiness;

    const HypothesisReport h = check_hypotheses(data, truth, t.lambda, cfg.c_star, diag.delta);
    t.n_lower = h.n_lower;
    t.n_upper = h.n_upper;
    t.rho_spiky = h.rho_spiky;
    t.lambda_ok = h.lambda_ok;
    t.rho = h.rho;
    t.rho_ok = h.rho_ok;
    t.rho_weak = h.rho_weak;
    t.rho_weak_ok = h.rho_weak_ok;

    t.thm1_rhs = h.rho_ok ? thm1_rhs(truth, t.lambda, mu2, diag.fro_M, h.rho) : kNaN;
    t.thm1_check = (h.lambda_ok && h.rho_ok) ? (leq(t.sq_err, t.thm1_rhs) ? 1 : 0) : -1;
    t.lemma2_rhs = h.rho_weak_ok ? residual_bound_factor(h.rho_weak) * fro_diff : kNaN;
    t.lemma2_check = (h.lambda_ok && h.rho_weak_ok) ? (geq(est.residual_fro, t.lemma2_rhs) ? 1 : 0) : -1;
    t.cor1_rhs = h.rho_ok ? cor1_rhs(cfg.m1, cfg.m2, data.n(), truth.rank, cfg.sigma, truth.a, cfg.c_star, h.rho)
                          : kNaN;

    const LemmaLambdaCheck ll = lemmaL_check(data, truth, cfg.sigma);
    t.lemmaL_i = ll.fro_M_bracket;
    t.lemmaL_ii = ll.acc_lower;
    t.lemmaL_iii = ll.fro_M_vs_acc;

    if (cfg.sigma > 0.0) {
        const double tau = mu2 * baseline_lambda(cfg.m1, cfg.m2, data.n(), cfg.sigma, truth.a, cfg.c_star) / 2.0;
        t.baseline_err = (estimate_baseline_from_factors(fx, tau) - truth.A0).squaredNorm() / mu2;
    } else {
        t.baseline_err = kNaN;
    }
    t.wall_ms = elapsed_ms(t0);
    return t;
}

RegressionTrial run_regression_trial(const ExperimentConfig& cfg, int trial_index) {
    const auto t0 = std::chrono::steady_clock::now();
    RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(trial_index));
    const RegressionSimulation sim = simulate_regression(cfg.l, cfg.m1, cfg.m2, cfg.rank, cfg.sigma, rng);
    const RegressionDataset& data = sim.data;
    const ColumnSpaceProjector pv = column_projector(data.V);
    const RegressionLambdaParams params{cfg.alpha, cfg.beta};

    RegressionTrial t;
    t.trial = trial_index;
    t.r = data.r;
    t.fro_E = sim.E.norm();
    t.delta_prime = t.fro_E > 0.0 ? delta_prime(pv, sim.E) : kNaN;
    switch (cfg.lambda.mode) {
    case LambdaMode::Theory: t.lambda = lambda_regression(data.l(), data.m2(), std::max<Eigen::Index>(data.r, 1), params); break;
    case LambdaMode::Oracle:
        if (!(t.fro_E > 0.0)) throw std::domain_error("oracle lambda undefined: E is zero");
        t.lambda = 3.0 * t.delta_prime;
        break;
    case LambdaMode::Manual: t.lambda = cfg.lambda.manual; break;
    }

    const RegressionEstimate est = estimate_regression(data, t.lambda);
    const Matrix VA0 = data.V * sim.A0;
    t.rank_VA0 = numerical_rank(VA0);
    t.rank_VA = numerical_rank(est.B_hat);
    t.rank_bound_ok = static_cast<std::size_t>(t.rank_VA) <= rank_cap(t.lambda);
    t.err = (data.V * est.A_hat - VA0).squaredNorm();
    t.residual = est.residual;
    t.objective = regression_objective(data, est.A_hat, t.lambda);
    const double g_zero = data.U.norm();
    const double g_a0 = t.fro_E + t.lambda * norm_schatten(VA0, Schatten::One);
    t.certificate_ok = leq(t.objective, std::min(g_zero, g_a0));

    const double rk = static_cast<double>(t.rank_VA0);
    t.lambda_ok = std::isfinite(t.delta_prime) && t.lambda >= 3.0 * t.delta_prime;
    t.rho = t.lambda * std::sqrt(2.0 * rk);
    t.rho_ok = t.rho < 1.0;
    t.rho_weak = t.lambda * std::sqrt(rk);
    t.rho_weak_ok = t.rho_weak < 1.0;
    const RankCondition rc = check_rank_condition(data.l(), data.m2(), data.r, t.rank_VA0, cfg.rho, params);
    t.rank_cond_bound = rc.bound;
    t.rank_cond_ok = rc.holds;

    t.thmr1_rhs = t.rho_ok ? thmr1_rhs(t.lambda, t.fro_E, t.rank_VA0, t.rho) : kNaN;
    t.thmr1_check = (t.lambda_ok && t.rho_ok) ? (leq(t.err, t.thmr1_rhs) ? 1 : 0) : -1;
    t.lr2_rhs = t.rho_weak_ok ? residual_bound_factor(t.rho_weak) * t.fro_E : kNaN;
    t.lr2_check = (t.lambda_ok && t.rho_weak_ok) ? (geq(t.residual, t.lr2_rhs) ? 1 : 0) : -1;
    t.thmr2_scale = thmr2_scale(cfg.sigma, cfg.m2, data.r, t.rank_VA0);
    t.thmr2_ratio = t.thmr2_scale > 0.0 ? t.err / t.thmr2_scale : kNaN;
    t.wall_ms = elapsed_ms(t0);
    return t;
}

ExperimentSummary summarize(const std::vector<CompletionTrial>& trials) {
    ExperimentSummary s;
    s.trials = static_cast<int>(trials.size());
    std::vector<double> err, lam;
    for (const auto& t : trials) {
        err.push_back(t.err);
        lam.push_back(t.lambda);
        s.rank_violations += !t.rank_bound_ok;
        s.certificate_violations += !t.certificate_ok;
        s.theorem_applicable += t.thm1_check >= 0;
        s.theorem_violations += t.thm1_check == 0;
        s.residual_applicable += t.lemma2_check >= 0;
        s.residual_violations += t.lemma2_check == 0;
    }
    s.median_err = median_of(err);
    s.mean_err = mean_of(err);
    s.median_lambda = median_of(lam);
    return s;
}

ExperimentSummary summarize(const std::vector<RegressionTrial>& trials) {
    ExperimentSummary s;
    s.trials = static_cast<int>(trials.size());
    std::vector<double> err, lam;
    for (const auto& t : trials) {
        err.push_back(t.err);
        lam.push_back(t.lambda);
        s.rank_violations += !t.rank_bound_ok;
        s.certificate_violations += !t.certificate_ok;
        s.theorem_applicable += t.thmr1_check >= 0;
        s.theorem_violations += t.thmr1_check == 0;
        s.residual_applicable += t.lr2_check >= 0;
        s.residual_violations += t.lr2_check == 0;
    }
    s.median_err = median_of(err);
    s.mean_err = mean_of(err);
    s.median_lambda = median_of(lam);
    return s;
}

std::string completion_csv(const std::vector<CompletionTrial>& trials, const ExperimentSummary& summary,
                           bool timing) {
    CsvWriter w("completion");
    std::vector<std::string> cols = {
        "trial",      "lambda",     "rank0",      "rank_hat",    "rank_bound_ok", "sq_err",    "err",
        "residual",   "objective",  "cert_ok",    "delta",       "delta_inf",     "fro_M",     "fro_acc",
        "collisions", "spikiness",  "n_lower",    "n_upper",     "rho_spiky",     "lambda_ok", "rho",
        "rho_ok",     "rho_weak",   "rho_weak_ok", "thm1_rhs",   "thm1_check",    "lemma2_rhs", "lemma2_check",
        "cor1_rhs",   "lemmaL_i",   "lemmaL_ii",  "lemmaL_iii",  "baseline_err"};
    if (timing) cols.push_back("wall_ms");
    w.header(cols);
    for (const auto& t : trials) {
        std::vector<std::string> r = {
            std::to_string(t.trial), num(t.lambda),          std::to_string(t.rank0),
            std::to_string(t.rank_hat), b(t.rank_bound_ok), num(t.sq_err),
            num(t.err),              num(t.residual_fro),    num(t.objective),
            b(t.certificate_ok),     num(t.delta),           num(t.delta_inf),
            num(t.fro_M),            num(t.fro_acc),         std::to_string(t.collisions),
            num(t.spikiness),        b(t.n_lower),           b(t.n_upper),
            num(t.rho_spiky),        b(t.lambda_ok),         num(t.rho),
            b(t.rho_ok),             num(t.rho_weak),        b(t.rho_weak_ok),
            num(t.thm1_rhs),         std::to_string(t.thm1_check), num(t.lemma2_rhs),
            std::to_string(t.lemma2_check), num(t.cor1_rhs), b(t.lemmaL_i),
            b(t.lemmaL_ii),          b(t.lemmaL_iii),        num(t.baseline_err)};
        if (timing) r.push_back(num(t.wall_ms));
        w.row(r);
    }
    w.summary(summary);
    return w.str();
}

std::string regression_csv(const std::vector<RegressionTrial>& trials, const ExperimentSummary& summary,
                           bool timing) {
    CsvWriter w("regression");
    std::vector<std::string> cols = {
        "trial",     "lambda",      "r",       "rank_VA0",  "rank_VA",   "rank_bound_ok", "err",
        "residual",  "objective",   "cert_ok", "fro_E",     "delta_prime", "lambda_ok",   "rho",
        "rho_ok",    "rho_weak",    "rho_weak_ok", "rank_cond_bound", "rank_cond_ok", "thmr1_rhs", "thmr1_check",
        "lr2_rhs",   "lr2_check",   "thmr2_scale", "thmr2_ratio"};
    if (timing) cols.push_back("wall_ms");
    w.header(cols);
    for (const auto& t : trials) {
        std::vector<std::string> r = {
            std::to_string(t.trial), num(t.lambda),        std::to_string(t.r),
            std::to_string(t.rank_VA0), std::to_string(t.rank_VA), b(t.rank_bound_ok),
            num(t.err),              num(t.residual),      num(t.objective),
            b(t.certificate_ok),     num(t.fro_E),         num(t.delta_prime),
            b(t.lambda_ok),          num(t.rho),           b(t.rho_ok),
            num(t.rho_weak),         b(t.rho_weak_ok),     num(t.rank_cond_bound),
            b(t.rank_cond_ok),       num(t.thmr1_rhs),     std::to_string(t.thmr1_check),
            num(t.lr2_rhs),          std::to_string(t.lr2_check), num(t.thmr2_scale),
            num(t.thmr2_ratio)};
        if (timing) r.push_back(num(t.wall_ms));
        w.row(r);
    }
    w.summary(summary);
    return w.str();
}

std::map<std::string, double> parse_summary_row(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    std::map<std::string, double> out;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("summary,", 0) != 0) continue;
        std::stringstream fields(line.substr(8));
        for (std::string kv; std::getline(fields, kv, ',');) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string val = kv.substr(eq + 1);
            double x = 0.0;
            std::from_chars(val.data(), val.data() + val.size(), x);
            out[kv.substr(0, eq)] = x;
        }
    }
    return out;
}

std::vector<double> parse_csv_column(std::string_view csv, std::string_view column) {
    std::istringstream in{std::string(csv)};
    std::vector<double> out;
    int index = -1;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#' || line.rfind("summary,", 0) == 0) continue;
        std::vector<std::string> cells;
        std::stringstream fields(line);
        for (std::string c; std::getline(fields, c, ',');) cells.push_back(c);
        if (index < 0) {
            const auto it = std::find(cells.begin(), cells.end(), column);
            if (it == cells.end()) throw std::invalid_argument("csv has no column " + std::string(column));
            index = static_cast<int>(it - cells.begin());
            continue;
        }
        double x = 0.0;
        const std::string& c = cells.at(index);
        std::from_chars(c.data(), c.data() + c.size(), x);
        out.push_back(x);
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res;
    if (cfg.mode == Mode::SimulateCompletion) {
        res.completion.resize(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](int i) { res.completion[i] = run_completion_trial(cfg, i); });
        res.summary = summarize(res.completion);
        res.csv = completion_csv(res.completion, res.summary, cfg.timing);
    } else if (cfg.mode == Mode::SimulateRegression) {
        res.regression.resize(cfg.trials);
        parallel_for(cfg.trials, cfg.threads, [&](int i) { res.regression[i] = run_regression_trial(cfg, i); });
        res.summary = summarize(res.regression);
        res.csv = regression_csv(res.regression, res.summary, cfg.timing);
    } else {
        throw std::invalid_argument("run_experiment handles the simulate modes only");
    }
    if (!cfg.out.empty()) write_text(cfg.out, res.csv);
    return res;
}

CompletionEstimateOutput run_estimate_completion(const ExperimentConfig& cfg) {
    cfg.validate();
    const CompletionDataset data = read_observations(cfg.obs, cfg.m1, cfg.m2);
    double lambda = 0.0;
    if (cfg.lambda.mode == LambdaMode::Manual)
        lambda = cfg.lambda.manual;
    else
        lambda = lambda_theory(data, cfg.a, cfg.c_star);
    CompletionEstimateOutput out;
    out.report = estimate(data, lambda);
    if (!cfg.truth.empty()) {
        const Matrix A0 = read_matrix_csv(cfg.truth);
        if (A0.rows() != cfg.m1 || A0.cols() != cfg.m2)
            throw std::invalid_argument(cfg.truth + ": truth matrix does not match m1 x m2");
        out.per_entry_error = (out.report.A_hat - A0).squaredNorm() / data.mu2();
    }
    if (!cfg.out.empty()) write_matrix_csv(cfg.out, out.report.A_hat);
    return out;
}

RegressionEstimate run_estimate_regression(const ExperimentConfig& cfg) {
    cfg.validate();
    const RegressionDataset data = make_regression_dataset(read_matrix_csv(cfg.predictors),
                                                           read_matrix_csv(cfg.responses));
    double lambda = 0.0;
    if (cfg.lambda.mode == LambdaMode::Manual) {
        lambda = cfg.lambda.manual;
    } else {
        if (data.r < 1) throw std::domain_error("predictor matrix has rank 0");
        lambda = lambda_regression(data.l(), data.m2(), data.r, RegressionLambdaParams{cfg.alpha, cfg.beta});
    }
    RegressionEstimate est = estimate_regression(data, lambda);
    if (!cfg.out.empty()) write_matrix_csv(cfg.out, est.A_hat);
    return est;
}

std::map<std::string, std::string> read_key_value_file(std::istream& in) {
    std::map<std::string, std::string> out;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto z = s.find_last_not_of(" \t\r");
        return s.substr(a, z - a + 1);
    };
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

}  // namespace sqrtnuc
