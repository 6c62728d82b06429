#include "sqrtnuc/completion.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sqrtnuc/diagnostics.hpp"
#include "sqrtnuc/shrinkage.hpp"

namespace sqrtnuc {

NoiseLaw parse_noise_law(std::string_view name) {
    if (name == "gaussian") return NoiseLaw::Gaussian;
    if (name == "rademacher") return NoiseLaw::Rademacher;
    if (name == "uniform") return NoiseLaw::Uniform;
    throw std::invalid_argument("unknown noise law '" + std::string(name) + "'");
}

std::string_view to_string(NoiseLaw law) {
    switch (law) {
    case NoiseLaw::Gaussian: return "gaussian";
    case NoiseLaw::Rademacher: return "rademacher";
    case NoiseLaw::Uniform: return "uniform";
    }
    return "?";
}

double draw_noise(NoiseLaw law, RngStream& rng) {
    switch (law) {
    case NoiseLaw::Gaussian:
        return std::normal_distribution<double>(0.0, 1.0)(rng);
    case NoiseLaw::Rademacher:
        return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    case NoiseLaw::Uniform: {
        const double h = std::sqrt(3.0);
        return std::uniform_real_distribution<double>(-h, h)(rng);
    }
    }
    return 0.0;
}

GroundTruth make_ground_truth(Matrix A0, std::optional<double> a) {
    GroundTruth t;
    const double sup = sup_norm(A0);
    t.a = a.value_or(sup);
    if (t.a < sup) throw std::invalid_argument("ground truth: a is below sup_norm(A0)");
    const double fro = A0.norm();
    t.rank = fro > 0.0 ? numerical_rank(A0) : 0;
    t.spikiness = fro > 0.0 ? std::sqrt(static_cast<double>(A0.rows()) * A0.cols()) * sup / fro : 0.0;
    t.A0 = std::move(A0);
    return t;
}

GroundTruth generate_low_rank_truth(int m1, int m2, int rank, double a, RngStream& rng) {
    if (m1 < 1 || m2 < 1 || rank < 0) throw std::invalid_argument("generate_low_rank_truth: bad dimensions");
    if (!(a >= 0.0)) throw std::invalid_argument("generate_low_rank_truth: a must be nonnegative");
    if (rank == 0 || a == 0.0) return make_ground_truth(Matrix::Zero(m1, m2), a);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix left(m1, rank), right(m2, rank);
    for (Eigen::Index i = 0; i < left.size(); ++i) left.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < right.size(); ++i) right.data()[i] = normal(rng);
    Matrix A0 = left * right.transpose();
    A0 *= a / sup_norm(A0);
    return make_ground_truth(std::move(A0), a);
}

void validate(const CompletionDataset& data) {
    if (data.m1 < 1 || data.m2 < 1) throw std::invalid_argument("completion dataset: dimensions must be positive");
    if (data.design.cells.size() != data.y.size())
        throw std::invalid_argument("completion dataset: design and observation counts differ");
    for (std::size_t i = 0; i < data.y.size(); ++i) {
        const Cell& c = data.design.cells[i];
        if (c.row < 0 || c.row >= data.m1 || c.col < 0 || c.col >= data.m2)
            throw std::out_of_range("completion dataset: observation " + std::to_string(i) + " outside the grid");
        if (!std::isfinite(data.y[i]))
            throw std::invalid_argument("completion dataset: observation " + std::to_string(i) + " is not finite");
    }
}

DesignList sample_design(int m1, int m2, std::size_t n, RngStream& rng) {
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("sample_design: dimensions must be positive");
    const auto cells = static_cast<std::uint64_t>(m1) * static_cast<std::uint64_t>(m2);
    std::uniform_int_distribution<std::uint64_t> pick(0, cells - 1);
    DesignList d;
    d.cells.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t u = pick(rng);
        d.cells.push_back({static_cast<int>(u / m2), static_cast<int>(u % m2)});
    }
    return d;
}

DesignList full_grid_design(int m1, int m2) {
    DesignList d;
    d.cells.reserve(static_cast<std::size_t>(m1) * m2);
    for (int j = 0; j < m1; ++j)
        for (int k = 0; k < m2; ++k) d.cells.push_back({j, k});
    return d;
}

CompletionDataset synthesize(const GroundTruth& truth, const NoiseSpec& noise, const DesignList& design,
                             RngStream& rng) {
    if (!(noise.sigma >= 0.0)) throw std::invalid_argument("synthesize: sigma must be nonnegative");
    CompletionDataset data;
    data.m1 = static_cast<int>(truth.A0.rows());
    data.m2 = static_cast<int>(truth.A0.cols());
    data.design = design;
    data.y.resize(design.cells.size());
    for (std::size_t i = 0; i < design.cells.size(); ++i) {
        const Cell& c = design.cells[i];
        if (c.row < 0 || c.row >= data.m1 || c.col < 0 || c.col >= data.m2)
            throw std::out_of_range("synthesize: design cell outside A0");
        data.y[i] = truth.A0(c.row, c.col) + noise.sigma * draw_noise(noise.law, rng);
    }
    return data;
}

Matrix accumulate_observations(const CompletionDataset& data) {
    Matrix acc = Matrix::Zero(data.m1, data.m2);
    for (std::size_t i = 0; i < data.y.size(); ++i) {
        const Cell& c = data.design.cells[i];
        acc(c.row, c.col) += data.y[i];
    }
    return acc;
}

Matrix build_X(const CompletionDataset& data) {
    validate(data);
    if (data.n() == 0) return Matrix::Zero(data.m1, data.m2);
    return accumulate_observations(data) * (data.mu2() / static_cast<double>(data.n()));
}

CompletionDataset read_observations(std::istream& in, int m1, int m2) {
    CompletionDataset data;
    data.m1 = m1;
    data.m2 = m2;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::stringstream fields(line);
        std::string f[3];
        int count = 0;
        for (std::string cell; std::getline(fields, cell, ',');) {
            if (count < 3) f[count] = cell;
            ++count;
        }
        if (count != 3) throw std::runtime_error("observations: line " + std::to_string(lineno) + " needs 3 fields");
        Cell c;
        double v = 0.0;
        try {
            std::size_t used = 0;
            c.row = std::stoi(f[0], &used);
            c.col = std::stoi(f[1], &used);
            v = std::stod(f[2], &used);
        } catch (const std::exception&) {
            throw std::runtime_error("observations: malformed line " + std::to_string(lineno));
        }
        data.design.cells.push_back(c);
        data.y.push_back(v);
    }
    validate(data);
    return data;
}

CompletionDataset read_observations(const std::string& path, int m1, int m2) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_observations(in, m1, m2);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_observations(std::ostream& out, const CompletionDataset& data) {
    char buf[32];
    for (std::size_t i = 0; i < data.y.size(); ++i) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, data.y[i]);
        out << data.design.cells[i].row << ',' << data.design.cells[i].col << ',';
        out.write(buf, ptr - buf);
        out << '\n';
    }
}

double lambda_theory(const CompletionDataset& data, double a, double c_star) {
    if (!(a > 0.0) || !(c_star > 0.0)) throw std::invalid_argument("lambda_theory: a and c* must be positive");
    const double acc = accumulate_observations(data).norm();
    if (acc == 0.0)
        throw std::domain_error("lambda_theory: all observations are zero; use the oracle or a manual lambda");
    const double logm = std::log(static_cast<double>(data.m1) + data.m2);
    const double small = std::min(data.m1, data.m2);
    const double n = static_cast<double>(data.n());
    return 2.0 * c_star * std::sqrt(logm / small) + 4.0 * a * std::sqrt(2.0 * n * logm / small) / acc;
}

double lambda_oracle(const CompletionDataset& data, const GroundTruth& truth) {
    return 3.0 * compute_delta(compute_M(data, truth)).delta;
}

EstimateReport estimate_from_factors(const SvdFactors& f, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("estimate: lambda must be positive");
    const std::vector<double> sigma(f.singulars.data(), f.singulars.data() + f.singulars.size());
    ShrinkageSolution sol = solve_sqrt_shrinkage(sigma, lambda, 0.0);
    EstimateReport rep;
    const Eigen::Index k = static_cast<Eigen::Index>(sol.retained);
    const Vector s = Eigen::Map<const Vector>(sol.s.data(), k);
    rep.A_hat = f.left.leftCols(k) * s.asDiagonal() * f.right.leftCols(k).transpose();
    rep.lambda = lambda;
    rep.rank_hat = k;
    rep.objective = sol.objective;
    rep.residual_fro = sol.radius;
    rep.shrunk = std::move(sol.s);
    return rep;
}

EstimateReport estimate(const CompletionDataset& data, double lambda) {
    return estimate_from_factors(svd(build_X(data)), lambda);
}

double baseline_lambda(int m1, int m2, std::size_t n, double sigma, double a, double c_star) {
    return 3.0 * lemma3_bound(m1, m2, n, sigma, a, c_star);
}

Matrix estimate_baseline_from_factors(const SvdFactors& f, double tau) {
    const std::vector<double> sigma(f.singulars.data(), f.singulars.data() + f.singulars.size());
    const std::vector<double> s = soft_threshold(sigma, tau);
    return f.compose(Eigen::Map<const Vector>(s.data(), static_cast<Eigen::Index>(s.size())));
}

Matrix estimate_baseline_known_sigma(const CompletionDataset& data, double sigma, double a, double c_star) {
    if (!(sigma > 0.0)) throw std::invalid_argument("baseline: sigma must be positive");
    const double tau = data.mu2() * baseline_lambda(data.m1, data.m2, data.n(), sigma, a, c_star) / 2.0;
    return estimate_baseline_from_factors(svd(build_X(data)), tau);
}

HypothesisReport check_hypotheses(const CompletionDataset& data, const GroundTruth& truth, double lambda,
                                  double c_star) {
    const Matrix M = compute_M(data, truth);
    const double delta = M.norm() > 0.0 ? compute_delta(M).delta : std::numeric_limits<double>::quiet_NaN();
    return check_hypotheses(data, truth, lambda, c_star, delta);
}

HypothesisReport check_hypotheses(const CompletionDataset& data, const GroundTruth& truth, double lambda,
                                  double c_star, double delta) {
    HypothesisReport h;
    const double m1 = data.m1, m2 = data.m2, n = static_cast<double>(data.n());
    const double logm = std::log(m1 + m2);
    const double small = std::min(m1, m2);
    const double rank = static_cast<double>(truth.rank);

    h.n_lower_margin = n - 8.0 * small * logm * logm;
    h.n_lower = h.n_lower_margin > 0.0;
    h.n_upper = 4.0 * n <= m1 * m2;

    const double fro0 = truth.A0.norm();
    h.rho_spiky = fro0 > 0.0 ? std::sqrt(rank) * (2.0 * c_star * std::sqrt(logm / small) +
                                                  4.0 * truth.a * std::sqrt(m1 * m2) / fro0 *
                                                      std::sqrt(2.0 * logm / small))
                             : 0.0;
    h.rho_spiky_ok = h.rho_spiky < 1.0;

    h.delta = delta;
    h.lambda_ok = std::isfinite(delta) && lambda >= 3.0 * delta;
    h.rho = lambda * std::sqrt(2.0 * rank);
    h.rho_ok = h.rho < 1.0;
    h.rho_weak = lambda * std::sqrt(rank);
    h.rho_weak_ok = h.rho_weak < 1.0;
    return h;
}

}  // namespace sqrtnuc
