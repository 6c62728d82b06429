// Verification suites behind `sqrtnuc verify <suite>`. Each suite fixes its
// own dimensions; the caller's config contributes seed, threads and trials.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sqrtnuc/diagnostics.hpp"
#include "sqrtnuc/harness.hpp"
#include "sqrtnuc/shrinkage.hpp"

namespace sqrtnuc {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// Least-squares slope of y on x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

class Suite {
public:
    Suite(std::string name, const ExperimentConfig& cfg, double budget_s)
        : cfg_(cfg), budget_(budget_s), t0_(Clock::now()) {
        report_.name = std::move(name);
        report_.passed = true;
    }

    int trials(int fallback) const { return cfg_.trials > 0 ? cfg_.trials : fallback; }
    const ExperimentConfig& cfg() const { return cfg_; }

    void check(bool ok, const std::string& what) {
        report_.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        report_.passed = report_.passed && ok;
    }
    void note(const std::string& what) { report_.lines.push_back("     " + what); }
    void append_csv(const std::string& csv) { report_.csv += csv; }

    SuiteReport finish() {
        const double s = seconds_since(t0_);
        check(s < budget_, "runtime " + fmt(s) + " s (budget " + fmt(budget_) + " s)");
        return std::move(report_);
    }

private:
    ExperimentConfig cfg_;
    double budget_;
    Clock::time_point t0_;
    SuiteReport report_;
};

ExperimentConfig completion_base(const ExperimentConfig& in) {
    ExperimentConfig c;
    c.mode = Mode::SimulateCompletion;
    c.seed = in.seed;
    c.threads = in.threads;
    return c;
}

ExperimentConfig regression_base(const ExperimentConfig& in) {
    ExperimentConfig c;
    c.mode = Mode::SimulateRegression;
    c.seed = in.seed;
    c.threads = in.threads;
    return c;
}

ExperimentResult run_trials(ExperimentConfig c, int trials) {
    c.trials = trials;
    c.out.clear();
    c.timing = false;
    return run_experiment(c);
}

// --- solver checks -------------------------------------------------------

SuiteReport shrinkage_oracle(const ExperimentConfig& cfg) {
    Suite suite("shrinkage-oracle", cfg, 10.0);
    const int count = suite.trials(1000);
    double worst = 0.0;
    int bad = 0;
    int exact_fit_cases = 0;
    std::ostringstream csv;
    csv << "# " << kCsvSchema << " shrinkage-oracle\ninstance,p,lambda,c,objective,oracle_objective,gap\n";
    for (int i = 0; i < count; ++i) {
        RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> pick_p(1, 6);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const int p = pick_p(rng);
        std::vector<double> sigma(p);
        for (double& s : sigma) s = 5.0 * u01(rng);
        std::sort(sigma.begin(), sigma.end(), std::greater<>());
        // Ties and a zero tail exercise the degenerate branches of the scan.
        if (p > 1 && u01(rng) < 0.15) sigma[1] = sigma[0];
        if (u01(rng) < 0.05) sigma.back() = 0.0;
        const double lambda = 0.05 + 0.94 * u01(rng);
        const double c = u01(rng) < 0.1 ? 0.0 : 3.0 * u01(rng);
        exact_fit_cases += c == 0.0;

        const ShrinkageSolution fast = solve_sqrt_shrinkage(sigma, lambda, c);
        const ShrinkageSolution slow = oracle_sqrt_shrinkage(sigma, lambda, c, 1e-12);
        const double gap = std::abs(fast.objective - slow.objective);
        const double rel = gap / (1.0 + std::abs(fast.objective));
        worst = std::max(worst, rel);
        bad += rel > 1e-8;
        csv << i << ',' << p << ',' << lambda << ',' << c << ',' << std::setprecision(17) << fast.objective << ','
            << slow.objective << ',' << gap << std::setprecision(6) << '\n';
    }
    suite.append_csv(csv.str());
    suite.note(std::to_string(count) + " instances, " + std::to_string(exact_fit_cases) + " with c = 0");
    suite.check(bad == 0, "objective gap <= 1e-8 (1 + |obj|): " + std::to_string(bad) + " misses, worst " + fmt(worst));

    const std::vector<double> hand_sigma = {3.0, 1.0};
    const ShrinkageSolution hand = solve_sqrt_shrinkage(hand_sigma, 0.5, 2.0);
    const double want = 3.0 - std::sqrt(5.0 / 3.0);
    const double err = std::max(std::abs(hand.s[0] - want), std::abs(hand.s[1]));
    suite.check(err <= 1e-6, "sigma=(3,1), lambda=0.5, c=2 gives s=(" + fmt(hand.s[0]) + ", " + fmt(hand.s[1]) +
                                 "), expected (" + fmt(want) + ", 0), error " + fmt(err));
    return suite.finish();
}

SuiteReport lemma1(const ExperimentConfig& cfg) {
    Suite suite("lemma1", cfg, 60.0);
    const int count = suite.trials(500);
    std::vector<std::string> rows(count);
    std::vector<int> violation(count, 0);
    parallel_for(count, cfg.threads, [&](int i) {
        RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> dim(4, 40);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const int m1 = dim(rng), m2 = dim(rng);
        const int rank = std::uniform_int_distribution<int>(0, std::min(m1, m2))(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 2 * static_cast<std::size_t>(m1 * m2))(rng);
        const double sigma = 2.0 * u01(rng);
        const double lambda = 0.05 + 1.15 * u01(rng);
        const GroundTruth truth = generate_low_rank_truth(m1, m2, rank, 1.0, rng);
        const DesignList design = sample_design(m1, m2, n, rng);
        const CompletionDataset data = synthesize(truth, NoiseSpec{sigma, NoiseLaw::Gaussian, 1.0}, design, rng);
        const EstimateReport est = estimate(data, lambda);
        const Eigen::Index r = numerical_rank(est.A_hat);
        const auto cap = static_cast<Eigen::Index>(std::floor(1.0 / (lambda * lambda)));
        violation[i] = r > cap;
        std::ostringstream row;
        row << i << ',' << m1 << ',' << m2 << ',' << n << ',' << lambda << ',' << r << ',' << cap << ','
            << (r <= cap) << '\n';
        rows[i] = row.str();
    });
    std::string csv = "# " + std::string(kCsvSchema) + " lemma1\ntrial,m1,m2,n,lambda,rank_hat,cap,ok\n";
    for (const auto& r : rows) csv += r;
    suite.append_csv(csv);
    const int bad = std::accumulate(violation.begin(), violation.end(), 0);
    suite.check(bad == 0, "rank(A_hat) <= floor(1/lambda^2): " + std::to_string(bad) + " violations in " +
                              std::to_string(count) + " completion trials");
    return suite.finish();
}

SuiteReport lr1(const ExperimentConfig& cfg) {
    Suite suite("lr1", cfg, 60.0);
    const int count = suite.trials(200);
    std::vector<std::string> rows(count);
    std::vector<int> violation(count, 0);
    parallel_for(count, cfg.threads, [&](int i) {
        RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> dim(4, 40);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const int l = dim(rng), m1 = dim(rng), m2 = dim(rng);
        const int rank = std::uniform_int_distribution<int>(0, std::min(m1, m2))(rng);
        const double sigma = 2.0 * u01(rng);
        const double lambda = 0.05 + 1.15 * u01(rng);
        const RegressionSimulation sim = simulate_regression(l, m1, m2, rank, sigma, rng);
        const RegressionEstimate est = estimate_regression(sim.data, lambda);
        const Eigen::Index r = numerical_rank(sim.data.V * est.A_hat);
        const auto cap = static_cast<Eigen::Index>(std::floor(1.0 / (lambda * lambda)));
        violation[i] = r > cap;
        std::ostringstream row;
        row << i << ',' << l << ',' << m1 << ',' << m2 << ',' << lambda << ',' << r << ',' << cap << ','
            << (r <= cap) << '\n';
        rows[i] = row.str();
    });
    std::string csv = "# " + std::string(kCsvSchema) + " lr1\ntrial,l,m1,m2,lambda,rank_VA,cap,ok\n";
    for (const auto& r : rows) csv += r;
    suite.append_csv(csv);
    const int bad = std::accumulate(violation.begin(), violation.end(), 0);
    suite.check(bad == 0, "rank(V A_hat) <= floor(1/lambda^2): " + std::to_string(bad) + " violations in " +
                              std::to_string(count) + " regression trials");
    return suite.finish();
}

// --- probabilistic lemmas -------------------------------------------------

SuiteReport lemma4(const ExperimentConfig& cfg) {
    Suite suite("lemma4", cfg, 30.0);
    const int count = suite.trials(10000);
    constexpr int m = 60;
    constexpr std::size_t n = 900;
    std::vector<std::uint64_t> coll(count);
    parallel_for(count, cfg.threads, [&](int i) {
        RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
        coll[i] = lemma4_collisions(sample_design(m, m, n, rng), m, m);
    });
    double mean = 0.0, sq = 0.0;
    int exceed = 0;
    std::string csv = "# " + std::string(kCsvSchema) + " lemma4\ndraw,collisions\n";
    for (int i = 0; i < count; ++i) {
        const double x = static_cast<double>(coll[i]);
        mean += x;
        sq += x * x;
        exceed += coll[i] >= n;
        csv += std::to_string(i) + ',' + std::to_string(coll[i]) + '\n';
    }
    suite.append_csv(csv);
    mean /= count;
    const double var = count > 1 ? (sq - count * mean * mean) / (count - 1) : 0.0;
    const double se = std::sqrt(var / count);
    const double expected = expected_collisions(n, m, m);
    const double freq = static_cast<double>(exceed) / count;
    const double cap = 2.0 / (m * m);
    suite.check(freq <= cap, "P(collisions >= n) = " + fmt(freq) + " <= 2/(m1 m2) = " + fmt(cap));
    suite.check(std::abs(mean - expected) <= 3.0 * se, "mean collisions " + fmt(mean) + " vs expected " +
                                                            fmt(expected) + " (3 SE = " + fmt(3.0 * se) + ")");
    return suite.finish();
}

SuiteReport lemmaL(const ExperimentConfig& cfg) {
    Suite suite("lemmaL", cfg, 120.0);
    ExperimentConfig c = completion_base(cfg);
    c.m1 = c.m2 = 60;
    c.n = 900;
    c.sigma = 1.0;
    c.a = 1.0;
    c.rank = 2;
    c.lambda = LambdaChoice{LambdaMode::Theory, 0.0};
    const ExperimentResult res = run_trials(c, suite.trials(1000));
    suite.append_csv(res.csv);
    const double total = static_cast<double>(res.completion.size());
    int v[3] = {0, 0, 0};
    for (const auto& t : res.completion) {
        v[0] += !t.lemmaL_i;
        v[1] += !t.lemmaL_ii;
        v[2] += !t.lemmaL_iii;
    }
    const char* names[3] = {"(i) sigma^2/(2n) <= ||M||^2 <= 2(||A0||^2/(n m1 m2) + sigma^2/n)",
                            "(ii) ||(1/n) sum Y X||^2 >= ||A0||^2/(n m1 m2)",
                            "(iii) ||M|| >= ||(1/n) sum Y X|| / 2"};
    for (int k = 0; k < 3; ++k)
        suite.check(v[k] / total <= 0.01,
                    std::string(names[k]) + ": violation fraction " + fmt(v[k] / total) + " <= 0.01");
    return suite.finish();
}

SuiteReport lemma3(const ExperimentConfig& cfg) {
    Suite suite("lemma3", cfg, 300.0);
    const int count = suite.trials(200);
    constexpr int m1 = 50, m2 = 20000;
    constexpr std::size_t n = 45000;
    constexpr double sigma = 1.0, a = 1.0;
    const double bound = lemma3_bound(m1, m2, n, sigma, a);
    std::vector<double> delta_inf(count);
    parallel_for(count, cfg.threads, [&](int i) {
        RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i));
        const GroundTruth truth = generate_low_rank_truth(m1, m2, 2, a, rng);
        const DesignList design = sample_design(m1, m2, n, rng);
        const CompletionDataset data = synthesize(truth, NoiseSpec{sigma, NoiseLaw::Gaussian, 1.0}, design, rng);
        const Vector s = singular_values(compute_M(data, truth));
        delta_inf[i] = s.size() ? s(0) : 0.0;
    });
    std::string csv = "# " + std::string(kCsvSchema) + " lemma3\ntrial,delta_inf,bound\n";
    int exceed = 0;
    char buf[64];
    for (int i = 0; i < count; ++i) {
        exceed += delta_inf[i] > bound;
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, delta_inf[i], bound);
        csv += buf;
    }
    suite.append_csv(csv);
    const double m = m1 + m2;
    const double p = 3.0 / m;
    const double allowed = p + 3.0 * std::sqrt(p * (1.0 - p) / count);
    const double freq = static_cast<double>(exceed) / count;
    const double n_lower = 8.0 * std::min(m1, m2) * std::pow(std::log(m), 2);
    suite.note("n = " + std::to_string(n) + " vs 8 (m1 ^ m2) log^2 m = " + fmt(n_lower) +
               ", 4n <= m1 m2: " + (4 * n <= static_cast<std::size_t>(m1) * m2 ? "yes" : "no"));
    suite.note("max Delta_inf " + fmt(*std::max_element(delta_inf.begin(), delta_inf.end())) + ", bound " +
               fmt(bound));
    suite.check(freq <= allowed, "P(Delta_inf > bound) = " + fmt(freq) + " <= 3/m + 3 SE = " + fmt(allowed));
    return suite.finish();
}

// --- completion theorems --------------------------------------------------

ExperimentConfig thm1_config(const ExperimentConfig& cfg) {
    ExperimentConfig c = completion_base(cfg);
    c.m1 = c.m2 = 100;
    c.n = 2000;
    c.rank = 1;
    c.sigma = 0.5;
    c.a = 1.0;
    c.lambda = LambdaChoice{LambdaMode::Oracle, 0.0};
    return c;
}

SuiteReport thm1(const ExperimentConfig& cfg) {
    Suite suite("thm1", cfg, 120.0);
    const ExperimentResult res = run_trials(thm1_config(cfg), suite.trials(200));
    suite.append_csv(res.csv);
    const auto& s = res.summary;
    suite.note("rho = lambda sqrt(2 rank) < 1 on " + std::to_string(s.theorem_applicable) + " of " +
               std::to_string(s.trials) + " trials");
    double worst = 0.0;
    for (const auto& t : res.completion)
        if (t.thm1_check >= 0) worst = std::max(worst, t.sq_err / t.thm1_rhs);
    suite.note("largest ||A_hat - A0||^2 / rhs " + fmt(worst));
    suite.check(s.theorem_violations == 0,
                "oracle inequality: " + std::to_string(s.theorem_violations) + " violations");
    suite.check(s.certificate_violations == 0,
                "objective certificate: " + std::to_string(s.certificate_violations) + " violations");
    return suite.finish();
}

SuiteReport lemma2(const ExperimentConfig& cfg) {
    Suite suite("lemma2", cfg, 120.0);
    const ExperimentResult res = run_trials(thm1_config(cfg), suite.trials(200));
    suite.append_csv(res.csv);
    const auto& s = res.summary;
    double tightest = std::numeric_limits<double>::infinity();
    for (const auto& t : res.completion)
        if (t.lemma2_check >= 0) tightest = std::min(tightest, t.residual_fro / t.lemma2_rhs);
    suite.note("hypotheses hold on " + std::to_string(s.residual_applicable) + " of " + std::to_string(s.trials) +
               " trials; smallest residual / bound " + fmt(tightest));
    suite.check(s.residual_violations == 0,
                "residual lower bound: " + std::to_string(s.residual_violations) + " violations");
    return suite.finish();
}

ExperimentConfig cor1_config(const ExperimentConfig& cfg, std::size_t n) {
    ExperimentConfig c = completion_base(cfg);
    c.m1 = c.m2 = 300;
    c.n = n;
    c.rank = 2;
    c.sigma = 1.0;
    c.a = 1.0;
    c.lambda = LambdaChoice{LambdaMode::Oracle, 0.0};
    return c;
}

SuiteReport cor1_scaling(const ExperimentConfig& cfg) {
    Suite suite("cor1-scaling", cfg, 600.0);
    const int count = suite.trials(50);
    std::vector<double> log_n, log_err;
    for (std::size_t n : {4000u, 8000u, 16000u}) {
        const ExperimentResult res = run_trials(cor1_config(cfg, n), count);
        suite.append_csv(res.csv);
        std::vector<double> ranks;
        for (const auto& t : res.completion) ranks.push_back(static_cast<double>(t.rank_hat));
        suite.note("n = " + std::to_string(n) + ": median per-entry error " + fmt(res.summary.median_err) +
                   ", median lambda " + fmt(res.summary.median_lambda) + ", median rank_hat " + fmt(median(ranks)));
        log_n.push_back(std::log(static_cast<double>(n)));
        log_err.push_back(std::log(res.summary.median_err));
    }
    const double slope = ols_slope(log_n, log_err);
    suite.check(slope >= -1.25 && slope <= -0.75, "log-log slope " + fmt(slope) + " in [-1.25, -0.75]");
    return suite.finish();
}

SuiteReport baseline_compare(const ExperimentConfig& cfg) {
    Suite suite("baseline-compare", cfg, 180.0);
    const ExperimentResult res = run_trials(cor1_config(cfg, 8000), suite.trials(50));
    suite.append_csv(res.csv);
    std::vector<double> base;
    for (const auto& t : res.completion) base.push_back(t.baseline_err);
    const double ours = res.summary.median_err;
    const double theirs = median(base);
    suite.check(ours <= 3.0 * theirs, "median error " + fmt(ours) + " <= 3 x known-sigma baseline " + fmt(theirs));
    return suite.finish();
}

// --- regression theorems --------------------------------------------------

ExperimentConfig thmr1_config(const ExperimentConfig& cfg, int m2 = 120) {
    ExperimentConfig c = regression_base(cfg);
    c.l = 60;
    c.m1 = 60;
    c.m2 = m2;
    c.rank = 2;
    c.sigma = 1.0;
    c.alpha = 0.1;
    c.beta = 0.5;
    c.lambda = LambdaChoice{LambdaMode::Theory, 0.0};
    return c;
}

/// Rank-1 truth with lambda = 3 Delta', where the hypotheses are reachable.
ExperimentConfig thmr1_oracle_config(const ExperimentConfig& cfg) {
    ExperimentConfig c = thmr1_config(cfg);
    c.rank = 1;
    c.lambda = LambdaChoice{LambdaMode::Oracle, 0.0};
    return c;
}

SuiteReport thmr1(const ExperimentConfig& cfg) {
    Suite suite("thmr1", cfg, 120.0);
    const int count = suite.trials(200);
    const ExperimentResult res = run_trials(thmr1_config(cfg), count);
    suite.append_csv(res.csv);
    const auto& s = res.summary;
    double max_ratio = 0.0;
    for (const auto& t : res.regression) max_ratio = std::max(max_ratio, 3.0 * t.delta_prime / t.lambda);
    suite.note("dimension lambda " + fmt(s.median_lambda) + "; hypotheses hold on " +
               std::to_string(s.theorem_applicable) + " of " + std::to_string(s.trials) +
               " trials (largest 3 Delta' / lambda " + fmt(max_ratio) + ")");
    suite.check(s.theorem_violations == 0, "dimension lambda: " + std::to_string(s.theorem_violations) + " violations");
    suite.check(s.certificate_violations == 0,
                "objective certificate: " + std::to_string(s.certificate_violations) + " violations");

    const ExperimentResult orc = run_trials(thmr1_oracle_config(cfg), count);
    suite.append_csv(orc.csv);
    double worst = 0.0;
    for (const auto& t : orc.regression)
        if (t.thmr1_check >= 0) worst = std::max(worst, t.err / t.thmr1_rhs);
    suite.note("oracle lambda, rank 1: hypotheses hold on " + std::to_string(orc.summary.theorem_applicable) +
               " of " + std::to_string(orc.summary.trials) + " trials; largest error / rhs " + fmt(worst));
    suite.check(orc.summary.theorem_violations == 0,
                "oracle lambda: " + std::to_string(orc.summary.theorem_violations) + " violations");
    return suite.finish();
}

SuiteReport lr2(const ExperimentConfig& cfg) {
    Suite suite("lr2", cfg, 120.0);
    const int count = suite.trials(200);
    for (const ExperimentConfig& c : {thmr1_config(cfg), thmr1_oracle_config(cfg)}) {
        const ExperimentResult res = run_trials(c, count);
        suite.append_csv(res.csv);
        const auto& s = res.summary;
        const std::string tag = c.lambda.mode == LambdaMode::Oracle ? "oracle lambda, rank 1" : "dimension lambda";
        suite.note(tag + ": hypotheses hold on " + std::to_string(s.residual_applicable) + " of " +
                   std::to_string(s.trials) + " trials");
        suite.check(s.residual_violations == 0,
                    tag + ": residual lower bound, " + std::to_string(s.residual_violations) + " violations");
    }
    return suite.finish();
}

SuiteReport thmr2_scaling(const ExperimentConfig& cfg) {
    Suite suite("thmr2-scaling", cfg, 300.0);
    const int count = suite.trials(200);
    std::vector<double> log_m2, log_err, ratios, medians;
    for (int m2 : {120, 240, 480}) {
        const ExperimentResult res = run_trials(thmr1_config(cfg, m2), count);
        suite.append_csv(res.csv);
        std::vector<double> scale;
        for (const auto& t : res.regression) scale.push_back(t.thmr2_scale);
        const double med = res.summary.median_err;
        const double ratio = med / median(scale);
        suite.note("m2 = " + std::to_string(m2) + ": median error " + fmt(med) + ", ratio to sigma^2 (m2 + r) rank " +
                   fmt(ratio));
        medians.push_back(med);
        ratios.push_back(ratio);
        log_m2.push_back(std::log(static_cast<double>(m2)));
        log_err.push_back(std::log(med));
    }
    const double slope = ols_slope(log_m2, log_err);
    const bool grows = std::is_sorted(medians.begin(), medians.end()) && medians.front() < medians.back();
    suite.check(grows && slope < 1.0, "median error increases with m2, log-log slope " + fmt(slope) + " < 1");
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    suite.check(*hi <= 4.0 * *lo, "ratio band max/min " + fmt(*hi / *lo) + " <= 4");
    return suite.finish();
}

using SuiteFn = SuiteReport (*)(const ExperimentConfig&);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
    static const std::map<std::string, SuiteFn, std::less<>> r = {
        {"shrinkage-oracle", shrinkage_oracle}, {"lemma1", lemma1},       {"lemma2", lemma2},
        {"lemma3", lemma3},                     {"lemmaL", lemmaL},       {"lemma4", lemma4},
        {"thm1", thm1},                         {"cor1-scaling", cor1_scaling}, {"lr1", lr1},
        {"lr2", lr2},                           {"thmr1", thmr1},         {"thmr2-scaling", thmr2_scaling},
        {"baseline-compare", baseline_compare}};
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "shrinkage-oracle", "lemma1", "lemma2", "lemma3",        "lemmaL", "lemma4",          "thm1",
        "cor1-scaling",     "lr1",    "lr2",    "thmr1",         "thmr2-scaling", "baseline-compare"};
    return names;
}

SuiteReport verify_suite(std::string_view name, const ExperimentConfig& cfg) {
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end()) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
    return it->second(cfg);
}

}  // namespace sqrtnuc
