#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqrtnuc/linalg.hpp"
#include "sqrtnuc/random.hpp"

namespace sqrtnuc {

/// Gaussian default for the sub-Gaussian constant c* of the sup-norm bound.
inline constexpr double kGaussianCStar = 6.5;

struct Cell {
    int row{};
    int col{};
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// One-hot design matrices e_row e_col^T, kept as (row, col) pairs.
/// Duplicates are allowed: cells are drawn with replacement.
struct DesignList {
    std::vector<Cell> cells;
};

enum class NoiseLaw { Gaussian, Rademacher, Uniform };

NoiseLaw parse_noise_law(std::string_view name);
std::string_view to_string(NoiseLaw law);

/// Noise xi has mean 0 and variance 1; observations carry sigma * xi.
struct NoiseSpec {
    double sigma{1.0};
    NoiseLaw law{NoiseLaw::Gaussian};
    double K{1.0};  ///< sub-Gaussian constant, informational
};

double draw_noise(NoiseLaw law, RngStream& rng);

struct GroundTruth {
    Matrix A0;
    Eigen::Index rank{};
    double a{};           ///< entry bound, >= sup_norm(A0)
    double spikiness{};   ///< sqrt(m1 m2) sup|A0| / ||A0||_F, 0 for A0 = 0
};

/// Fills rank and spikiness; a defaults to sup_norm(A0).
GroundTruth make_ground_truth(Matrix A0, std::optional<double> a = std::nullopt);

/// Product of two standard-normal factors of the given rank, rescaled so
/// that sup_norm(A0) == a. Rank 0 gives the zero matrix.
GroundTruth generate_low_rank_truth(int m1, int m2, int rank, double a, RngStream& rng);

struct CompletionDataset {
    int m1{};
    int m2{};
    DesignList design;
    std::vector<double> y;

    [[nodiscard]] std::size_t n() const { return y.size(); }
    [[nodiscard]] double mu2() const { return static_cast<double>(m1) * static_cast<double>(m2); }
};

/// Validates dimensions and that every cell lies on the m1 x m2 grid.
void validate(const CompletionDataset& data);

DesignList sample_design(int m1, int m2, std::size_t n, RngStream& rng);
/// Every cell exactly once, row-major order.
DesignList full_grid_design(int m1, int m2);

CompletionDataset synthesize(const GroundTruth& truth, const NoiseSpec& noise, const DesignList& design,
                             RngStream& rng);

/// sum_i Y_i X_i (unscaled accumulation).
Matrix accumulate_observations(const CompletionDataset& data);
/// X = (mu^2 / n) sum_i Y_i X_i.
Matrix build_X(const CompletionDataset& data);

/// Observation file: `row,col,value` lines, 0-based indices.
CompletionDataset read_observations(std::istream& in, int m1, int m2);
CompletionDataset read_observations(const std::string& path, int m1, int m2);
void write_observations(std::ostream& out, const CompletionDataset& data);

/// Fully data-driven lambda:
///   2 c* sqrt(log m / (m1 ^ m2)) + 4 a sqrt(2 n log m / (m1 ^ m2)) / ||sum Y_i X_i||_F
/// with m = m1 + m2 and natural log. Throws std::domain_error if every y is 0.
double lambda_theory(const CompletionDataset& data, double a, double c_star = kGaussianCStar);

/// 3 * ||M||_op / ||M||_F with M = (X - A0) / mu^2: the smallest lambda that
/// meets the oracle inequality's hypothesis. Simulation only.
double lambda_oracle(const CompletionDataset& data, const GroundTruth& truth);

struct EstimateReport {
    Matrix A_hat;
    double lambda{};
    Eigen::Index rank_hat{};
    double objective{};     ///< ||A_hat - X||_F + lambda ||A_hat||_*
    double residual_fro{};  ///< ||A_hat - X||_F
    std::vector<double> shrunk;  ///< singular values of A_hat
};

/// argmin_A ||A - X||_F + lambda ||A||_*.
EstimateReport estimate(const CompletionDataset& data, double lambda);
/// Same, starting from an already factored X.
EstimateReport estimate_from_factors(const SvdFactors& x_factors, double lambda);

/// Step size of the known-sigma competitor:
/// 3 (c* sigma + 2a) sqrt(2 log m / ((m1 ^ m2) n)).
double baseline_lambda(int m1, int m2, std::size_t n, double sigma, double a, double c_star = kGaussianCStar);

/// argmin_A ||A - X||_F^2 + lambda mu^2 ||A||_*, i.e. singular values of X
/// soft-thresholded at mu^2 * baseline_lambda / 2.
Matrix estimate_baseline_known_sigma(const CompletionDataset& data, double sigma, double a,
                                     double c_star = kGaussianCStar);
Matrix estimate_baseline_from_factors(const SvdFactors& x_factors, double tau);

struct HypothesisReport {
    bool n_lower{};        ///< n > 8 (m1 ^ m2) log^2 m
    double n_lower_margin{};
    bool n_upper{};        ///< 4 n <= m1 m2
    double rho_spiky{};    ///< smallest rho satisfying the spikiness condition
    bool rho_spiky_ok{};   ///< rho_spiky < 1
    double delta{};        ///< ||M||_op / ||M||_F (NaN if M = 0)
    bool lambda_ok{};      ///< lambda >= 3 delta
    double rho{};          ///< lambda sqrt(2 rank A0)
    bool rho_ok{};         ///< rho < 1
    double rho_weak{};     ///< lambda sqrt(rank A0), the residual-bound form
    bool rho_weak_ok{};
};

HypothesisReport check_hypotheses(const CompletionDataset& data, const GroundTruth& truth, double lambda,
                                  double c_star = kGaussianCStar);
/// Same, with delta = ||M||_op / ||M||_F already known (NaN when M = 0).
HypothesisReport check_hypotheses(const CompletionDataset& data, const GroundTruth& truth, double lambda,
                                  double c_star, double delta);

}  // namespace sqrtnuc
