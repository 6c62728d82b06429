#include "sqrtnuc/linalg.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <Eigen/SVD>

namespace sqrtnuc {

namespace {

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite())
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
}

}  // namespace

Eigen::Index SvdFactors::rank(double rel_tol) const {
    if (singulars.size() == 0 || singulars(0) <= 0.0) return 0;
    const double cut = rel_tol * singulars(0);
    Eigen::Index r = 0;
    while (r < singulars.size() && singulars(r) > cut) ++r;
    return r;
}

Matrix SvdFactors::compose(const Vector& weights) const {
    return left * weights.asDiagonal() * right.transpose();
}

SvdFactors svd(const Matrix& a) {
    require_finite(a, "svd");
    if (a.rows() == 0 || a.cols() == 0)
        return {Matrix(a.rows(), 0), Vector(0), Matrix(a.cols(), 0)};
    // BDCSVD works on the smaller dimension internally; transposing a wide
    // input keeps the bidiagonalisation on an m2 x m1 tall problem.
    const bool wide = a.rows() < a.cols();
    Eigen::MatrixXd work = wide ? Eigen::MatrixXd(a.transpose()) : Eigen::MatrixXd(a);
    Eigen::BDCSVD<Eigen::MatrixXd> dec(work, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success) throw SvdError("svd: decomposition did not converge");
    SvdFactors out;
    out.singulars = dec.singularValues();
    if (wide) {
        out.left = dec.matrixV();
        out.right = dec.matrixU();
    } else {
        out.left = dec.matrixU();
        out.right = dec.matrixV();
    }
    if (!out.singulars.allFinite()) throw SvdError("svd: non-finite singular values");
    return out;
}

Vector singular_values(const Matrix& a) {
    require_finite(a, "singular_values");
    if (a.rows() == 0 || a.cols() == 0) return Vector(0);
    const bool wide = a.rows() < a.cols();
    Eigen::MatrixXd work = wide ? Eigen::MatrixXd(a.transpose()) : Eigen::MatrixXd(a);
    Eigen::BDCSVD<Eigen::MatrixXd> dec(work);
    if (dec.info() != Eigen::Success) throw SvdError("singular_values: decomposition did not converge");
    return dec.singularValues();
}

Eigen::Index numerical_rank(const Matrix& a, double rel_tol) {
    const Vector s = singular_values(a);
    if (s.size() == 0 || s(0) <= 0.0) return 0;
    return (s.array() > rel_tol * s(0)).count();
}

double norm_schatten(const Matrix& a, Schatten q) {
    switch (q) {
    case Schatten::Two:
        return a.norm();
    case Schatten::One:
        return singular_values(a).sum();
    case Schatten::Infinity: {
        const Vector s = singular_values(a);
        return s.size() ? s(0) : 0.0;
    }
    }
    return 0.0;
}

double sup_norm(const Matrix& a) {
    return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

ColumnSpaceProjector::ColumnSpaceProjector(Matrix basis, Eigen::Index ambient_rows)
    : basis_(std::move(basis)), rows_(ambient_rows) {
    if (basis_.rows() != rows_) throw std::invalid_argument("ColumnSpaceProjector: basis row mismatch");
}

Matrix ColumnSpaceProjector::apply(const Matrix& b) const {
    if (b.rows() != rows_) throw std::invalid_argument("ColumnSpaceProjector::apply: row mismatch");
    if (rank() == 0) return Matrix::Zero(b.rows(), b.cols());
    return basis_ * (basis_.transpose() * b);
}

Matrix ColumnSpaceProjector::apply_complement(const Matrix& b) const {
    return b - apply(b);
}

ColumnSpaceProjector column_projector(const Matrix& v, double rank_tol) {
    if (!(rank_tol > 0.0)) throw std::invalid_argument("column_projector: rank_tol must be positive");
    const SvdFactors f = svd(v);
    const Eigen::Index r = f.rank(rank_tol);
    return ColumnSpaceProjector(f.left.leftCols(r), v.rows());
}

Matrix min_norm_solve(const Matrix& v, const Matrix& b, double rank_tol) {
    if (v.rows() != b.rows()) throw std::invalid_argument("min_norm_solve: V and B row counts differ");
    require_finite(b, "min_norm_solve");
    const SvdFactors f = svd(v);
    const Eigen::Index r = f.rank(rank_tol);
    const Matrix q = f.left.leftCols(r);
    const Matrix coeff = q.transpose() * b;

    const double tol = 1e-8 * (1.0 + b.norm());
    const Matrix outside = b - q * coeff;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (outside.col(j).norm() > tol) {
            std::ostringstream msg;
            msg << "min_norm_solve: column " << j << " of B lies outside col(V) (distance "
                << outside.col(j).norm() << ")";
            throw std::domain_error(msg.str());
        }
    }
    const Vector inv = f.singulars.head(r).cwiseInverse();
    return f.right.leftCols(r) * inv.asDiagonal() * coeff;
}

Matrix read_matrix_csv(std::istream& in) {
    std::vector<double> values;
    Eigen::Index cols = -1, rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        Eigen::Index count = 0;
        std::stringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) {
            const auto first = cell.find_first_not_of(" \t");
            const auto last = cell.find_last_not_of(" \t");
            if (first == std::string::npos)
                throw std::runtime_error("matrix csv: empty field on row " + std::to_string(rows));
            const char* begin = cell.data() + first;
            const char* end = cell.data() + last + 1;
            double x = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, x);
            if (ec != std::errc() || ptr != end || !std::isfinite(x))
                throw std::runtime_error("matrix csv: bad number '" + cell + "' on row " + std::to_string(rows));
            values.push_back(x);
            ++count;
        }
        if (cols < 0) cols = count;
        if (count != cols)
            throw std::runtime_error("matrix csv: row " + std::to_string(rows) + " has " + std::to_string(count) +
                                     " fields, expected " + std::to_string(cols));
        ++rows;
    }
    if (rows == 0) throw std::runtime_error("matrix csv: no rows");
    Matrix out(rows, cols);
    std::copy(values.begin(), values.end(), out.data());
    return out;
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return read_matrix_csv(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_matrix_csv(std::ostream& out, const Matrix& a) {
    char buf[32];
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a(i, j));
            if (j) out << ',';
            out.write(buf, ptr - buf);
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_matrix_csv(out, a);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sqrtnuc
