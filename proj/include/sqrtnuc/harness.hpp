#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sqrtnuc/completion.hpp"
#include "sqrtnuc/regression.hpp"

namespace sqrtnuc {

inline constexpr std::string_view kCsvSchema = "sqrtnuc-v1";

enum class Mode { SimulateCompletion, EstimateCompletion, SimulateRegression, EstimateRegression, Verify };
enum class LambdaMode { Theory, Oracle, Manual };
enum class DesignSource { Random, Grid };

struct LambdaChoice {
    LambdaMode mode{LambdaMode::Theory};
    double manual{};
};

/// "theory", "oracle" or "manual:<x>" with x > 0.
LambdaChoice parse_lambda(std::string_view text);
std::string to_string(const LambdaChoice& choice);

struct ExperimentConfig {
    Mode mode{Mode::SimulateCompletion};
    int m1{60};
    int m2{60};
    int l{60};
    std::size_t n{900};
    DesignSource design{DesignSource::Random};
    int rank{2};
    double sigma{1.0};
    NoiseLaw noise{NoiseLaw::Gaussian};
    double a{1.0};
    bool a_given{false};  ///< estimation modes need an explicit a for the theory lambda
    LambdaChoice lambda{};
    double c_star{kGaussianCStar};
    double alpha{0.1};
    double beta{0.5};
    double rho{0.9};  ///< rho used when reporting the regression rank condition
    int trials{1};
    std::uint64_t seed{1};
    int threads{0};   ///< 0 = hardware concurrency
    bool timing{false};
    std::string suite;
    std::string out;
    std::string obs;
    std::string truth;
    std::string predictors;
    std::string responses;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

/// One simulated completion trial.
struct CompletionTrial {
    int trial{};
    double lambda{};
    Eigen::Index rank0{};
    Eigen::Index rank_hat{};
    bool rank_bound_ok{};
    double sq_err{};       ///< ||A_hat - A0||_F^2
    double err{};          ///< sq_err / (m1 m2)
    double residual_fro{};
    double objective{};
    bool certificate_ok{};  ///< F(A_hat) <= min(F(A0), F(0), F(X))
    double delta{};
    double delta_inf{};
    double fro_M{};
    double fro_acc{};
    std::uint64_t collisions{};
    double spikiness{};
    bool n_lower{};
    bool n_upper{};
    double rho_spiky{};
    bool lambda_ok{};
    double rho{};
    bool rho_ok{};
    double rho_weak{};
    bool rho_weak_ok{};
    double thm1_rhs{};     ///< NaN unless rho < 1
    int thm1_check{};      ///< 1 holds, 0 violated, -1 hypotheses fail
    double lemma2_rhs{};   ///< NaN unless rho_weak < 1
    int lemma2_check{};
    double cor1_rhs{};
    bool lemmaL_i{};
    bool lemmaL_ii{};
    bool lemmaL_iii{};
    double baseline_err{};  ///< per-entry error of the known-sigma competitor
    double wall_ms{};
};

/// One simulated regression trial.
struct RegressionTrial {
    int trial{};
    double lambda{};
    Eigen::Index r{};
    Eigen::Index rank_VA0{};
    Eigen::Index rank_VA{};
    bool rank_bound_ok{};
    double err{};  ///< ||V (A_hat - A0)||_F^2
    double residual{};
    double objective{};
    bool certificate_ok{};  ///< G(A_hat) <= min(G(A0), G(0))
    double fro_E{};
    double delta_prime{};
    bool lambda_ok{};
    double rho{};
    bool rho_ok{};
    double rho_weak{};
    bool rho_weak_ok{};
    double rank_cond_bound{};
    bool rank_cond_ok{};
    double thmr1_rhs{};
    int thmr1_check{};
    double lr2_rhs{};
    int lr2_check{};
    double thmr2_scale{};
    double thmr2_ratio{};
    double wall_ms{};
};

struct ExperimentSummary {
    int trials{};
    double median_err{};
    double mean_err{};
    double median_lambda{};
    int rank_violations{};
    int certificate_violations{};
    int theorem_applicable{};
    int theorem_violations{};
    int residual_applicable{};
    int residual_violations{};
};

struct ExperimentResult {
    std::vector<CompletionTrial> completion;
    std::vector<RegressionTrial> regression;
    ExperimentSummary summary;
    std::string csv;
};

/// Runs f(0..count-1) on `threads` workers (0 = hardware concurrency). The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(int count, int threads, const std::function<void(int)>& f);

CompletionTrial run_completion_trial(const ExperimentConfig& cfg, int trial_index);
RegressionTrial run_regression_trial(const ExperimentConfig& cfg, int trial_index);

ExperimentSummary summarize(const std::vector<CompletionTrial>& trials);
ExperimentSummary summarize(const std::vector<RegressionTrial>& trials);

std::string completion_csv(const std::vector<CompletionTrial>& trials, const ExperimentSummary& summary,
                           bool timing);
std::string regression_csv(const std::vector<RegressionTrial>& trials, const ExperimentSummary& summary,
                           bool timing);

/// Parses the `summary,key=value,...` row of an emitted CSV.
std::map<std::string, double> parse_summary_row(std::string_view csv);
/// Values of one column of an emitted CSV, trial rows only.
std::vector<double> parse_csv_column(std::string_view csv, std::string_view column);

/// simulate-completion / simulate-regression; writes cfg.out when set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Single-shot estimate on user data.
struct CompletionEstimateOutput {
    EstimateReport report;
    std::optional<double> per_entry_error;  ///< when a truth matrix was supplied
};
CompletionEstimateOutput run_estimate_completion(const ExperimentConfig& cfg);
RegressionEstimate run_estimate_regression(const ExperimentConfig& cfg);

/// key=value lines ('#' comments, blank lines ignored).
std::map<std::string, std::string> read_key_value_file(std::istream& in);

struct SuiteReport {
    std::string name;
    bool passed{};
    std::vector<std::string> lines;
    std::string csv;  ///< per-trial records, when the suite is trial based
};

const std::vector<std::string>& suite_names();
/// Runs a verification suite. cfg supplies seed, threads, and optionally
/// trials (0 keeps the suite default); dimensions are fixed per suite.
/// Throws std::invalid_argument for an unknown suite name.
SuiteReport verify_suite(std::string_view name, const ExperimentConfig& cfg);

}  // namespace sqrtnuc
