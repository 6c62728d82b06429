#include "sqrtnuc/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace sqrtnuc {

namespace {

void validate(std::span<const double> sigma, double lambda, double c) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("shrinkage: lambda must be positive");
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("shrinkage: c must be nonnegative");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] >= 0.0) || !std::isfinite(sigma[i]))
            throw std::invalid_argument("shrinkage: singular values must be finite and nonnegative");
        if (i > 0 && sigma[i] > sigma[i - 1]) throw std::invalid_argument("shrinkage: sigma must be nonincreasing");
    }
}

ShrinkageSolution finish(std::vector<double> s, std::span<const double> sigma, double lambda, double c) {
    ShrinkageSolution out;
    double resid2 = c * c;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = s[i] - sigma[i];
        resid2 += d * d;
        if (s[i] > 0.0) ++out.retained;
    }
    out.radius = std::sqrt(resid2);
    out.objective = shrinkage_objective(s, sigma, lambda, c);
    out.s = std::move(s);
    return out;
}

std::vector<double> thresholded(std::span<const double> sigma, double t) {
    std::vector<double> s(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) s[i] = std::max(sigma[i] - t, 0.0);
    return s;
}

}  // namespace

double shrinkage_objective(std::span<const double> s, std::span<const double> sigma, double lambda, double c) {
    double resid2 = c * c, mass = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = s[i] - sigma[i];
        resid2 += d * d;
        mass += s[i];
    }
    return std::sqrt(resid2) + lambda * mass;
}

ShrinkageSolution solve_sqrt_shrinkage(std::span<const double> sigma, double lambda, double c) {
    validate(sigma, lambda, c);
    const std::size_t p = sigma.size();
    if (p == 0) return finish({}, sigma, lambda, c);

    // tail[k] = sum_{i >= k} sigma_i^2 (0-based), i.e. the dropped mass when k are kept.
    std::vector<double> tail(p + 1, 0.0);
    for (std::size_t i = p; i-- > 0;) tail[i] = tail[i + 1] + sigma[i] * sigma[i];

    const double lam2 = lambda * lambda;
    // Slack for the consistency test; exact ties are accepted on both sides.
    const double slack = 1e-12 * (sigma[0] + lambda * std::sqrt(tail[0] + c * c));

    std::optional<ShrinkageSolution> best;
    auto consider = [&](std::vector<double> s) {
        ShrinkageSolution cand = finish(std::move(s), sigma, lambda, c);
        if (!best || cand.objective < best->objective) best = std::move(cand);
    };

    for (std::size_t k = 0; k <= p; ++k) {
        const double denom = 1.0 - static_cast<double>(k) * lam2;
        if (denom <= 0.0) break;
        const double r = std::sqrt((tail[k] + c * c) / denom);
        const double t = lambda * r;
        const double upper = k == 0 ? std::numeric_limits<double>::infinity() : sigma[k - 1];
        const double lower = k == p ? 0.0 : sigma[k];
        if (upper > t - slack && t + slack >= lower) consider(thresholded(sigma, t));
    }

    if (c == 0.0) {
        const auto positives = std::count_if(sigma.begin(), sigma.end(), [](double x) { return x > 0.0; });
        if (lam2 * static_cast<double>(positives) <= 1.0) consider(std::vector<double>(sigma.begin(), sigma.end()));
    }

    if (!best) {
        // Rounding pushed every consistent candidate outside the slack. Each
        // candidate is still feasible and the optimum is one of them, so the
        // cheapest one is the minimiser.
        for (std::size_t k = 0; k <= p; ++k) {
            const double denom = 1.0 - static_cast<double>(k) * lam2;
            if (denom <= 0.0) break;
            consider(thresholded(sigma, lambda * std::sqrt((tail[k] + c * c) / denom)));
        }
    }
    return std::move(*best);
}

ShrinkageSolution oracle_sqrt_shrinkage(std::span<const double> sigma, double lambda, double c, double tol) {
    validate(sigma, lambda, c);
    if (!(tol > 0.0)) throw std::invalid_argument("oracle_sqrt_shrinkage: tol must be positive");
    if (sigma.size() > 8) throw std::invalid_argument("oracle_sqrt_shrinkage: at most 8 singular values");
    if (sigma.empty()) return finish({}, sigma, lambda, c);

    double norm2 = c * c;
    for (double x : sigma) norm2 += x * x;
    double lo = 0.0;
    double hi = sigma[0] + lambda * std::sqrt(norm2);

    auto value = [&](double t) { return shrinkage_objective(thresholded(sigma, t), sigma, lambda, c); };

    constexpr int kGrid = 64;
    double best_t = 0.0;
    double best_v = value(0.0);
    while (hi - lo > tol) {
        const double step = (hi - lo) / kGrid;
        int arg = 0;
        double arg_v = value(lo);
        for (int i = 1; i <= kGrid; ++i) {
            const double v = value(lo + i * step);
            if (v < arg_v) {
                arg_v = v;
                arg = i;
            }
        }
        if (arg_v < best_v) {
            best_v = arg_v;
            best_t = lo + arg * step;
        }
        const double new_lo = std::max(lo, lo + (arg - 1) * step);
        const double new_hi = std::min(hi, lo + (arg + 1) * step);
        if (!(new_hi - new_lo < hi - lo)) break;
        lo = new_lo;
        hi = new_hi;
    }
    return finish(thresholded(sigma, best_t), sigma, lambda, c);
}

std::vector<double> soft_threshold(std::span<const double> sigma, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("soft_threshold: tau must be nonnegative");
    return thresholded(sigma, tau);
}

}  // namespace sqrtnuc
