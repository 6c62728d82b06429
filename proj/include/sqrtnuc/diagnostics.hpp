#pragma once

#include <cstdint>

#include "sqrtnuc/completion.hpp"
#include "sqrtnuc/linalg.hpp"

namespace sqrtnuc {

/// M = (X - A0) / mu^2.
Matrix compute_M(const CompletionDataset& data, const GroundTruth& truth);

struct DeltaPair {
    double delta{};      ///< ||M||_op / ||M||_F
    double delta_inf{};  ///< ||M||_op
};

/// Throws std::domain_error for M = 0.
DeltaPair compute_delta(const Matrix& M);

/// Sup-norm deviation bound (c* sigma + 2a) sqrt(2 log m / ((m1 ^ m2) n)).
double lemma3_bound(int m1, int m2, std::size_t n, double sigma, double a, double c_star = kGaussianCStar);

/// The three two-sided norm controls on M and on (1/n) sum Y_i X_i.
struct LemmaLambdaCheck {
    bool fro_M_bracket{};   ///< sigma^2/(2n) <= ||M||^2 <= 2(||A0||^2/(n m1 m2) + sigma^2/n)
    bool acc_lower{};       ///< ||(1/n) sum Y_i X_i||^2 >= ||A0||^2 / (n m1 m2)
    bool fro_M_vs_acc{};    ///< ||M|| >= ||(1/n) sum Y_i X_i|| / 2
};

LemmaLambdaCheck lemmaL_check(const CompletionDataset& data, const GroundTruth& truth, double sigma);

/// sum_{i<j} <X_i, X_j>: pairs of observations that hit the same cell.
std::uint64_t lemma4_collisions(const DesignList& design, int m1, int m2);

/// Expected collision count n(n-1) / (2 m1 m2) under uniform sampling.
double expected_collisions(std::size_t n, int m1, int m2);

/// (2 lambda mu^2 / (1 - rho))^2 ||M||_F^2 rank(A0). Throws for rho >= 1.
double thm1_rhs(const GroundTruth& truth, double lambda, double mu2, double fro_M, double rho);

/// C* = 16 (2 c* sigma^2 + (18 + 2 c*) a^2) / (1 - rho)^2.
double cor1_constant(double sigma, double a, double c_star, double rho);
/// Per-entry error bound C* (m1 v m2) / n * rank0 * log m.
double cor1_rhs(int m1, int m2, std::size_t n, Eigen::Index rank0, double sigma, double a, double c_star,
                double rho);

/// (2 lambda / (1 - rho))^2 ||E||_F^2 rank(V A0). Throws for rho >= 1.
double thmr1_rhs(double lambda, double fro_E, Eigen::Index rank_VA0, double rho);

/// Reference scale sigma^2 (m2 + r) rank(V A0) of the Gaussian regression rate.
double thmr2_scale(double sigma, int m2, Eigen::Index r, Eigen::Index rank_VA0);

/// ((3 - sqrt(1 + rho^2)) / (3 + sqrt(1 + rho^2))), the residual lower-bound factor.
double residual_bound_factor(double rho);

struct DiagnosticsRecord {
    Matrix M;
    double delta{};      ///< NaN when M = 0
    double delta_inf{};
    double fro_M{};
    double fro_acc{};    ///< ||(1/n) sum Y_i X_i||_F
    std::uint64_t collisions{};
    double spikiness{};
};

DiagnosticsRecord compute_diagnostics(const CompletionDataset& data, const GroundTruth& truth);

}  // namespace sqrtnuc
