#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sqrtnuc/harness.hpp"

using namespace sqrtnuc;

namespace {

ExperimentConfig small_completion() {
    ExperimentConfig c;
    c.mode = Mode::SimulateCompletion;
    c.m1 = 20;
    c.m2 = 15;
    c.n = 120;
    c.rank = 2;
    c.trials = 9;
    c.seed = 42;
    c.threads = 1;
    return c;
}

std::filesystem::path scratch_dir() {
    const auto p = std::filesystem::temp_directory_path() /
                   ("sqrtnuc_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                    ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST(Rng, SplitMixFinaliser) {
    // Reference values of the SplitMix64 output function for state 0 and 1.
    EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(mix64(1), 0x910A2DEC89025CC1ULL);
}

TEST(Rng, StreamsDependOnlyOnSeedAndIndex) {
    RngStream a = derive_stream(7, 3), b = derive_stream(7, 3), c = derive_stream(7, 4), d = derive_stream(8, 3);
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
}

TEST(LambdaChoice, Parse) {
    EXPECT_EQ(parse_lambda("theory").mode, LambdaMode::Theory);
    EXPECT_EQ(parse_lambda("oracle").mode, LambdaMode::Oracle);
    const LambdaChoice m = parse_lambda("manual:0.25");
    EXPECT_EQ(m.mode, LambdaMode::Manual);
    EXPECT_EQ(m.manual, 0.25);
    EXPECT_EQ(to_string(m), "manual:0.25");
    for (const char* bad : {"manual:", "manual:-1", "manual:0", "manual:abc", "Theory", "manual:1x"})
        EXPECT_THROW(parse_lambda(bad), std::invalid_argument) << bad;
}

TEST(Config, Validation) {
    ExperimentConfig c = small_completion();
    EXPECT_NO_THROW(c.validate());
    c.trials = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_completion();
    c.m1 = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_completion();
    c.rank = 16;
    EXPECT_THROW(c.validate(), std::invalid_argument);

    ExperimentConfig e;
    e.mode = Mode::EstimateCompletion;
    e.obs = "x.csv";
    e.lambda = parse_lambda("oracle");
    EXPECT_THROW(e.validate(), std::invalid_argument);
    e.lambda = parse_lambda("theory");
    EXPECT_THROW(e.validate(), std::invalid_argument);  // needs an explicit a
    e.a_given = true;
    EXPECT_NO_THROW(e.validate());

    ExperimentConfig v;
    v.mode = Mode::Verify;
    v.trials = 0;
    EXPECT_THROW(v.validate(), std::invalid_argument);  // no suite
    v.suite = "lemma4";
    EXPECT_NO_THROW(v.validate());
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
    for (int threads : {1, 3, 8}) {
        std::vector<std::atomic<int>> hits(50);
        parallel_for(50, threads, [&](int i) { hits[i]++; });
        for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    EXPECT_THROW(parallel_for(10, 4, [](int i) {
                     if (i == 6) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
    parallel_for(0, 4, [](int) { FAIL(); });
}

TEST(Experiment, NoiselessFullGridRecoversTruth) {
    ExperimentConfig c = small_completion();
    c.sigma = 0.0;
    c.rank = 1;
    c.design = DesignSource::Grid;
    c.lambda = parse_lambda("manual:1e-6");
    c.trials = 1;
    const ExperimentResult r = run_experiment(c);
    ASSERT_EQ(r.completion.size(), 1u);
    EXPECT_LT(r.completion[0].err, 1e-24);
}

TEST(Experiment, CsvSchemaAndSummaryRecomputation) {
    const ExperimentResult r = run_experiment(small_completion());
    EXPECT_EQ(r.csv.rfind("# sqrtnuc-v1 completion\ntrial,lambda,", 0), 0u);
    const std::vector<double> err = parse_csv_column(r.csv, "err");
    ASSERT_EQ(err.size(), 9u);
    for (std::size_t i = 0; i < err.size(); ++i) EXPECT_EQ(err[i], r.completion[i].err);

    std::vector<double> sorted = err;
    std::sort(sorted.begin(), sorted.end());
    double mean = 0.0;
    for (double e : err) mean += e;
    mean /= 9.0;
    const auto summary = parse_summary_row(r.csv);
    EXPECT_EQ(summary.at("median_err"), sorted[4]);
    EXPECT_EQ(summary.at("median_err"), r.summary.median_err);
    EXPECT_EQ(summary.at("mean_err"), r.summary.mean_err);
    EXPECT_NEAR(summary.at("mean_err"), mean, 1e-15 * mean);
    EXPECT_EQ(summary.at("trials"), 9.0);
    const std::vector<double> cert = parse_csv_column(r.csv, "cert_ok");
    EXPECT_EQ(summary.at("certificate_violations"), std::count(cert.begin(), cert.end(), 0.0));
    EXPECT_EQ(summary.at("certificate_violations"), 0.0);
    EXPECT_EQ(summary.at("rank_violations"), 0.0);
    EXPECT_EQ(r.csv.find("wall_ms"), std::string::npos);
}

TEST(Experiment, TimingColumnIsOptIn) {
    ExperimentConfig c = small_completion();
    c.timing = true;
    c.trials = 2;
    EXPECT_NE(run_experiment(c).csv.find(",wall_ms\n"), std::string::npos);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
    ExperimentConfig c = small_completion();
    c.lambda = parse_lambda("oracle");
    const std::string one = run_experiment(c).csv;
    c.threads = 4;
    EXPECT_EQ(run_experiment(c).csv, one);
    c.seed = 43;
    EXPECT_NE(run_experiment(c).csv, one);

    ExperimentConfig r;
    r.mode = Mode::SimulateRegression;
    r.l = 20;
    r.m1 = 10;
    r.m2 = 25;
    r.trials = 6;
    r.threads = 1;
    const std::string a = run_experiment(r).csv;
    r.threads = 3;
    EXPECT_EQ(run_experiment(r).csv, a);
    EXPECT_EQ(a.rfind("# sqrtnuc-v1 regression\n", 0), 0u);
}

// Pinned desk-scale configuration: the oracle lambda sits in (0, 1) and the
// oracle-inequality hypothesis is reachable.
TEST(Experiment, OracleLambdaFeasibleAtDeskScale) {
    ExperimentConfig c;
    c.mode = Mode::SimulateCompletion;
    c.m1 = c.m2 = 100;
    c.n = 2000;
    c.rank = 1;
    c.sigma = 0.5;
    c.a = 1.0;
    c.lambda = parse_lambda("oracle");
    c.seed = 1;
    const CompletionTrial t = run_completion_trial(c, 0);
    EXPECT_GT(t.lambda, 0.0);
    EXPECT_LT(t.lambda, 1.0);
    EXPECT_LT(t.rho, 1.0);
    EXPECT_TRUE(t.lambda_ok);
    EXPECT_EQ(t.thm1_check, 1);
    EXPECT_EQ(t.lemma2_check, 1);
}

TEST(Experiment, TheoryLambdaUsedForRegression) {
    ExperimentConfig r;
    r.mode = Mode::SimulateRegression;
    r.l = 60;
    r.m1 = 60;
    r.m2 = 120;
    const RegressionTrial t = run_regression_trial(r, 0);
    EXPECT_NEAR(t.lambda, lambda_regression(60, 120, 60, RegressionLambdaParams{0.1, 0.5}), 1e-15);
    EXPECT_EQ(t.r, 60);
    EXPECT_EQ(t.rank_VA0, 2);
    EXPECT_TRUE(t.certificate_ok);
}

TEST(KeyValueFile, ParsesAndRejects) {
    std::istringstream in("# comment\n\n m1 = 30 \nlambda=manual:0.2\n");
    const auto kv = read_key_value_file(in);
    EXPECT_EQ(kv.at("m1"), "30");
    EXPECT_EQ(kv.at("lambda"), "manual:0.2");
    EXPECT_EQ(kv.size(), 2u);
    std::istringstream bad("m1 30\n");
    EXPECT_THROW(read_key_value_file(bad), std::invalid_argument);
}

TEST(Estimate, CompletionFromFiles) {
    const auto dir = scratch_dir();
    RngStream rng = derive_stream(5, 0);
    const GroundTruth t = generate_low_rank_truth(12, 10, 1, 1.0, rng);
    const CompletionDataset data =
        synthesize(t, NoiseSpec{0.1, NoiseLaw::Gaussian, 1.0}, sample_design(12, 10, 100, rng), rng);
    {
        std::ofstream obs(dir / "obs.csv");
        write_observations(obs, data);
    }
    write_matrix_csv((dir / "truth.csv").string(), t.A0);

    ExperimentConfig c;
    c.mode = Mode::EstimateCompletion;
    c.m1 = 12;
    c.m2 = 10;
    c.obs = (dir / "obs.csv").string();
    c.truth = (dir / "truth.csv").string();
    c.out = (dir / "a_hat.csv").string();
    c.lambda = parse_lambda("manual:0.3");
    const CompletionEstimateOutput out = run_estimate_completion(c);
    const EstimateReport direct = estimate(data, 0.3);
    EXPECT_EQ(out.report.A_hat, direct.A_hat);
    ASSERT_TRUE(out.per_entry_error.has_value());
    EXPECT_NEAR(*out.per_entry_error, (direct.A_hat - t.A0).squaredNorm() / 120.0, 1e-15);
    EXPECT_EQ(read_matrix_csv(c.out), direct.A_hat);

    c.lambda = parse_lambda("theory");
    c.a = 1.0;
    c.a_given = true;
    EXPECT_NEAR(run_estimate_completion(c).report.lambda, lambda_theory(data, 1.0), 1e-15);

    c.obs = (dir / "missing.csv").string();
    try {
        run_estimate_completion(c);
        FAIL() << "expected an I/O error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("missing.csv"), std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST(Estimate, RegressionFromFiles) {
    const auto dir = scratch_dir();
    RngStream rng = derive_stream(5, 1);
    const RegressionSimulation s = simulate_regression(20, 8, 12, 2, 0.5, rng);
    write_matrix_csv((dir / "V.csv").string(), s.data.V);
    write_matrix_csv((dir / "U.csv").string(), s.data.U);
    ExperimentConfig c;
    c.mode = Mode::EstimateRegression;
    c.predictors = (dir / "V.csv").string();
    c.responses = (dir / "U.csv").string();
    const RegressionEstimate e = run_estimate_regression(c);
    EXPECT_NEAR(e.lambda, lambda_regression(20, 12, 8, RegressionLambdaParams{}), 1e-15);
    EXPECT_LT((e.A_hat - estimate_regression(s.data, e.lambda).A_hat).norm(), 1e-12);
    std::filesystem::remove_all(dir);
}

TEST(Suites, NamesAndUnknown) {
    const std::set<std::string> names(suite_names().begin(), suite_names().end());
    for (const char* n : {"shrinkage-oracle", "lemma1", "lemma2", "lemma3", "lemmaL", "lemma4", "thm1", "cor1-scaling",
                          "lr1", "lr2", "thmr1", "thmr2-scaling", "baseline-compare"})
        EXPECT_TRUE(names.count(n)) << n;
    EXPECT_EQ(names.size(), 13u);
    ExperimentConfig v;
    v.mode = Mode::Verify;
    EXPECT_THROW(verify_suite("lemma9", v), std::invalid_argument);
}

TEST(Suites, SmallRunsPassAndAreReproducible) {
    ExperimentConfig v;
    v.mode = Mode::Verify;
    v.trials = 40;
    v.threads = 2;
    for (const char* n : {"shrinkage-oracle", "lemma1", "lr1", "lemma4"}) {
        const SuiteReport a = verify_suite(n, v);
        EXPECT_TRUE(a.passed) << n;
        EXPECT_EQ(verify_suite(n, v).csv, a.csv) << n;
    }
}
