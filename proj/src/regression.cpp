#include "sqrtnuc/regression.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sqrtnuc/shrinkage.hpp"

namespace sqrtnuc {

RegressionDataset make_regression_dataset(Matrix V, Matrix U, double rank_tol) {
    if (V.rows() != U.rows()) throw std::invalid_argument("regression dataset: V and U must have the same row count");
    if (V.rows() < 1 || V.cols() < 1 || U.cols() < 1)
        throw std::invalid_argument("regression dataset: dimensions must be positive");
    if (!V.allFinite() || !U.allFinite()) throw std::invalid_argument("regression dataset: non-finite entries");
    RegressionDataset d;
    d.r = svd(V).rank(rank_tol);
    d.V = std::move(V);
    d.U = std::move(U);
    return d;
}

void RegressionLambdaParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("regression lambda: alpha must lie in (0, 1)");
    if (!(beta > 0.0)) throw std::invalid_argument("regression lambda: beta must be positive");
}

double lambda_regression(Eigen::Index l, Eigen::Index m2, Eigen::Index r, const RegressionLambdaParams& params) {
    params.validate();
    if (l < 1 || m2 < 1 || r < 1) throw std::invalid_argument("lambda_regression: l, m2, r must be positive");
    const double root = std::sqrt(static_cast<double>(m2)) + std::sqrt(static_cast<double>(r));
    return (1.0 + params.beta) * root / ((1.0 - params.alpha) * std::sqrt(static_cast<double>(l) * m2));
}

RankCondition check_rank_condition(Eigen::Index l, Eigen::Index m2, Eigen::Index r, Eigen::Index rank_VA0,
                                   double rho, const RegressionLambdaParams& params) {
    const double g = params.gamma();
    const double root = std::sqrt(static_cast<double>(m2)) + std::sqrt(static_cast<double>(r));
    RankCondition out;
    out.bound = rho * rho * static_cast<double>(l) * m2 / (2.0 * g * g * root * root);
    out.margin = out.bound - static_cast<double>(rank_VA0);
    out.holds = out.margin >= 0.0;
    return out;
}

RegressionEstimate estimate_regression(const RegressionDataset& data, double lambda, double rank_tol) {
    if (!(lambda > 0.0)) throw std::invalid_argument("estimate_regression: lambda must be positive");
    const ColumnSpaceProjector pv = column_projector(data.V, rank_tol);
    const Matrix Z = pv.apply(data.U);
    const double c = (data.U - Z).norm();

    const SvdFactors f = svd(Z);
    const std::vector<double> zeta(f.singulars.data(), f.singulars.data() + f.singulars.size());
    const ShrinkageSolution sol = solve_sqrt_shrinkage(zeta, lambda, c);

    RegressionEstimate est;
    const auto k = static_cast<Eigen::Index>(sol.retained);
    const Vector s = Eigen::Map<const Vector>(sol.s.data(), k);
    est.B_hat = f.left.leftCols(k) * s.asDiagonal() * f.right.leftCols(k).transpose();
    est.A_hat = min_norm_solve(data.V, est.B_hat, rank_tol);
    est.lambda = lambda;
    est.rank_VA = k;
    est.residual = (data.U - est.B_hat).norm();
    est.objective = sol.objective;
    return est;
}

double regression_objective(const RegressionDataset& data, const Matrix& A, double lambda) {
    const Matrix VA = data.V * A;
    return (data.U - VA).norm() + lambda * norm_schatten(VA, Schatten::One);
}

RegressionSimulation simulate_regression(int l, int m1, int m2, int rank, double sigma, RngStream& rng,
                                         double rank_tol) {
    if (l < 1 || m1 < 1 || m2 < 1 || rank < 0) throw std::invalid_argument("simulate_regression: bad dimensions");
    std::normal_distribution<double> normal(0.0, 1.0);
    auto gaussian = [&](Eigen::Index rows, Eigen::Index cols) {
        Matrix g(rows, cols);
        for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
        return g;
    };
    RegressionSimulation sim;
    Matrix V = gaussian(l, m1);
    if (rank == 0) {
        sim.A0 = Matrix::Zero(m1, m2);
    } else {
        const Matrix left = gaussian(m1, rank);
        const Matrix right = gaussian(m2, rank);
        sim.A0 = left * right.transpose();
    }
    sim.E = sigma * gaussian(l, m2);
    Matrix U = V * sim.A0 + sim.E;
    sim.data = make_regression_dataset(std::move(V), std::move(U), rank_tol);
    return sim;
}

double delta_prime(const ColumnSpaceProjector& pv, const Matrix& E) {
    const double fro = E.norm();
    if (fro == 0.0) throw std::domain_error("delta_prime: E is zero");
    return norm_schatten(pv.apply(E), Schatten::Infinity) / fro;
}

}  // namespace sqrtnuc
