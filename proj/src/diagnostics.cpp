#include "sqrtnuc/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace sqrtnuc {

namespace {

void require_rho(double rho, const char* what) {
    if (!(rho < 1.0)) throw std::domain_error(std::string(what) + ": rho must be below 1");
}

}  // namespace

Matrix compute_M(const CompletionDataset& data, const GroundTruth& truth) {
    if (truth.A0.rows() != data.m1 || truth.A0.cols() != data.m2)
        throw std::invalid_argument("compute_M: A0 does not match the dataset dimensions");
    return (build_X(data) - truth.A0) / data.mu2();
}

DeltaPair compute_delta(const Matrix& M) {
    const double fro = M.norm();
    if (fro == 0.0) throw std::domain_error("compute_delta: M is zero, delta undefined");
    const double op = singular_values(M)(0);
    return {op / fro, op};
}

double lemma3_bound(int m1, int m2, std::size_t n, double sigma, double a, double c_star) {
    const double logm = std::log(static_cast<double>(m1) + m2);
    const double small = std::min(m1, m2);
    return (c_star * sigma + 2.0 * a) * std::sqrt(2.0 * logm / (small * static_cast<double>(n)));
}

LemmaLambdaCheck lemmaL_check(const CompletionDataset& data, const GroundTruth& truth, double sigma) {
    const double n = static_cast<double>(data.n());
    const double mu2 = data.mu2();
    const Matrix acc = accumulate_observations(data) / n;
    const Matrix M = acc - truth.A0 / mu2;
    const double fro_M2 = M.squaredNorm();
    const double fro_acc2 = acc.squaredNorm();
    const double a0_2 = truth.A0.squaredNorm();

    LemmaLambdaCheck out;
    out.fro_M_bracket = sigma * sigma / (2.0 * n) <= fro_M2 && fro_M2 <= 2.0 * (a0_2 / (n * mu2) + sigma * sigma / n);
    out.acc_lower = fro_acc2 >= a0_2 / (n * mu2);
    out.fro_M_vs_acc = std::sqrt(fro_M2) >= 0.5 * std::sqrt(fro_acc2);
    return out;
}

std::uint64_t lemma4_collisions(const DesignList& design, int /*m1*/, int m2) {
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    counts.reserve(design.cells.size());
    for (const Cell& c : design.cells)
        ++counts[static_cast<std::uint64_t>(c.row) * static_cast<std::uint64_t>(m2) + static_cast<std::uint64_t>(c.col)];
    std::uint64_t total = 0;
    for (const auto& [cell, k] : counts) total += k * (k - 1) / 2;
    return total;
}

double expected_collisions(std::size_t n, int m1, int m2) {
    const double nn = static_cast<double>(n);
    return nn * (nn - 1.0) / (2.0 * static_cast<double>(m1) * m2);
}

double thm1_rhs(const GroundTruth& truth, double lambda, double mu2, double fro_M, double rho) {
    require_rho(rho, "thm1_rhs");
    const double f = 2.0 * lambda * mu2 / (1.0 - rho);
    return f * f * fro_M * fro_M * static_cast<double>(truth.rank);
}

double cor1_constant(double sigma, double a, double c_star, double rho) {
    require_rho(rho, "cor1_constant");
    return 16.0 * (2.0 * c_star * sigma * sigma + (18.0 + 2.0 * c_star) * a * a) / ((1.0 - rho) * (1.0 - rho));
}

double cor1_rhs(int m1, int m2, std::size_t n, Eigen::Index rank0, double sigma, double a, double c_star,
                double rho) {
    const double big = std::max(m1, m2);
    const double logm = std::log(static_cast<double>(m1) + m2);
    return cor1_constant(sigma, a, c_star, rho) * big / static_cast<double>(n) * static_cast<double>(rank0) * logm;
}

double thmr1_rhs(double lambda, double fro_E, Eigen::Index rank_VA0, double rho) {
    require_rho(rho, "thmr1_rhs");
    const double f = 2.0 * lambda / (1.0 - rho);
    return f * f * fro_E * fro_E * static_cast<double>(rank_VA0);
}

double thmr2_scale(double sigma, int m2, Eigen::Index r, Eigen::Index rank_VA0) {
    return sigma * sigma * (static_cast<double>(m2) + static_cast<double>(r)) * static_cast<double>(rank_VA0);
}

double residual_bound_factor(double rho) {
    const double q = std::sqrt(1.0 + rho * rho);
    return (3.0 - q) / (3.0 + q);
}

DiagnosticsRecord compute_diagnostics(const CompletionDataset& data, const GroundTruth& truth) {
    DiagnosticsRecord d;
    d.M = compute_M(data, truth);
    d.fro_M = d.M.norm();
    if (d.fro_M > 0.0) {
        const DeltaPair p = compute_delta(d.M);
        d.delta = p.delta;
        d.delta_inf = p.delta_inf;
    } else {
        d.delta = std::numeric_limits<double>::quiet_NaN();
        d.delta_inf = 0.0;
    }
    d.fro_acc = data.n() ? accumulate_observations(data).norm() / static_cast<double>(data.n()) : 0.0;
    d.collisions = lemma4_collisions(data.design, data.m1, data.m2);
    d.spikiness = truth.spikiness;
    return d;
}

}  // namespace sqrtnuc
