#pragma once

#include "sqrtnuc/linalg.hpp"
#include "sqrtnuc/random.hpp"

namespace sqrtnuc {

/// U = V A0 + E with V (l x m1) predictors and U (l x m2) responses.
struct RegressionDataset {
    Matrix V;
    Matrix U;
    Eigen::Index r{};  ///< numerical rank of V

    [[nodiscard]] Eigen::Index l() const { return V.rows(); }
    [[nodiscard]] Eigen::Index m1() const { return V.cols(); }
    [[nodiscard]] Eigen::Index m2() const { return U.cols(); }
};

RegressionDataset make_regression_dataset(Matrix V, Matrix U, double rank_tol = kDefaultRankTol);

/// Confidence parameters of the dimension-only lambda; gamma = (1 + beta) / (1 - alpha).
struct RegressionLambdaParams {
    double alpha{0.1};
    double beta{0.5};

    [[nodiscard]] double gamma() const { return (1.0 + beta) / (1.0 - alpha); }
    /// Throws unless alpha in (0, 1) and beta > 0.
    void validate() const;
};

/// (1 + beta)(sqrt(m2) + sqrt(r)) / ((1 - alpha) sqrt(l m2)); free of sigma.
double lambda_regression(Eigen::Index l, Eigen::Index m2, Eigen::Index r, const RegressionLambdaParams& params);

struct RankCondition {
    bool holds{};
    double bound{};   ///< rho^2 l m2 / (2 gamma^2 (sqrt(m2) + sqrt(r))^2)
    double margin{};  ///< bound - rank_VA0
};

RankCondition check_rank_condition(Eigen::Index l, Eigen::Index m2, Eigen::Index r, Eigen::Index rank_VA0,
                                   double rho, const RegressionLambdaParams& params);

struct RegressionEstimate {
    Matrix A_hat;  ///< minimum-Frobenius-norm coefficient matrix
    Matrix B_hat;  ///< V * A_hat
    double lambda{};
    Eigen::Index rank_VA{};
    double residual{};   ///< ||U - B_hat||_F
    double objective{};  ///< ||U - V A_hat||_F + lambda ||V A_hat||_*
};

/// argmin_A ||U - V A||_F + lambda ||V A||_*. With Z = P_V U and
/// c = ||(I - P_V) U||_F the problem reduces to the spectral shrinkage of Z's
/// singular values with offset c; A_hat is then the min-norm solution of V A = B_hat.
RegressionEstimate estimate_regression(const RegressionDataset& data, double lambda,
                                       double rank_tol = kDefaultRankTol);

/// G(A) = ||U - V A||_F + lambda ||V A||_*.
double regression_objective(const RegressionDataset& data, const Matrix& A, double lambda);

/// Simulated regression instance with Gaussian V, a rank-k Gaussian-product A0
/// and E = sigma * N(0, 1).
struct RegressionSimulation {
    RegressionDataset data;
    Matrix A0;
    Matrix E;
};

RegressionSimulation simulate_regression(int l, int m1, int m2, int rank, double sigma, RngStream& rng,
                                         double rank_tol = kDefaultRankTol);

/// ||P_V E||_op / ||E||_F. Throws std::domain_error for E = 0.
double delta_prime(const ColumnSpaceProjector& pv, const Matrix& E);

}  // namespace sqrtnuc
