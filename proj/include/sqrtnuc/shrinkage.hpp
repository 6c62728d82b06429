#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sqrtnuc {

/// Minimiser of  sqrt(||s - sigma||^2 + c^2) + lambda * sum(s)  over s >= 0.
struct ShrinkageSolution {
    std::vector<double> s;   ///< shrunk singular values, nonincreasing
    std::size_t retained{};  ///< number of strictly positive entries of s
    double radius{};         ///< sqrt(||s - sigma||^2 + c^2)
    double objective{};
};

/// Value of the spectral objective at an arbitrary s (no feasibility check).
double shrinkage_objective(std::span<const double> s, std::span<const double> sigma, double lambda, double c);

/// Exact solver. Every minimiser has the form s_i = max(sigma_i - lambda*r, 0)
/// where r is the residual radius, so the optimum is found by scanning the
/// number k of retained values: r^2 (1 - k lambda^2) = sum_{i>k} sigma_i^2 + c^2
/// and the candidate is consistent iff sigma_k > lambda*r >= sigma_{k+1}.
/// When c = 0 the exact fit s = sigma is also admissible provided
/// lambda^2 * #{sigma_i > 0} <= 1 (the residual term is then at its kink).
///
/// Throws std::invalid_argument for unsorted or negative sigma, lambda <= 0 or c < 0.
ShrinkageSolution solve_sqrt_shrinkage(std::span<const double> sigma, double lambda, double c);

/// Brute-force reference: nested grid search over the threshold t = lambda*r,
/// refined until the bracket is narrower than tol. Only meant for short
/// spectra (length <= 8).
ShrinkageSolution oracle_sqrt_shrinkage(std::span<const double> sigma, double lambda, double c, double tol);

/// max(sigma_i - tau, 0), the proximal map of tau * nuclear norm on a spectrum.
std::vector<double> soft_threshold(std::span<const double> sigma, double tau);

}  // namespace sqrtnuc
