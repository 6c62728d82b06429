#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqrtnuc {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Relative cutoff (against the largest singular value) used for every
/// numerical-rank decision in the library.
inline constexpr double kDefaultRankTol = 1e-10;

/// Raised when the SVD backend reports non-convergence.
class SvdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thin singular value decomposition A = left * diag(singulars) * right^T,
/// of width p = min(rows, cols). Singular values are nonincreasing.
struct SvdFactors {
    Matrix left;
    Vector singulars;
    Matrix right;

    [[nodiscard]] Eigen::Index width() const { return singulars.size(); }
    /// Number of singular values strictly above rel_tol * sigma_1.
    [[nodiscard]] Eigen::Index rank(double rel_tol = kDefaultRankTol) const;
    /// left * diag(weights) * right^T for a weight vector of length width().
    [[nodiscard]] Matrix compose(const Vector& weights) const;
};

SvdFactors svd(const Matrix& a);
/// Singular values only (cheaper; no vectors accumulated).
Vector singular_values(const Matrix& a);

enum class Schatten { One, Two, Infinity };

/// Count of singular values above rel_tol * sigma_1 (singular values only).
Eigen::Index numerical_rank(const Matrix& a, double rel_tol = kDefaultRankTol);

double norm_schatten(const Matrix& a, Schatten q);
double sup_norm(const Matrix& a);

/// Orthogonal projector onto col(V), stored through an orthonormal basis.
class ColumnSpaceProjector {
public:
    ColumnSpaceProjector(Matrix basis, Eigen::Index ambient_rows);

    [[nodiscard]] const Matrix& basis() const { return basis_; }
    [[nodiscard]] Eigen::Index rank() const { return basis_.cols(); }
    [[nodiscard]] Eigen::Index rows() const { return rows_; }

    /// P_V * B
    [[nodiscard]] Matrix apply(const Matrix& b) const;
    /// (I - P_V) * B
    [[nodiscard]] Matrix apply_complement(const Matrix& b) const;

private:
    Matrix basis_;
    Eigen::Index rows_;
};

ColumnSpaceProjector column_projector(const Matrix& v, double rank_tol = kDefaultRankTol);

/// Minimum-Frobenius-norm A with V*A = B. Throws std::domain_error naming the
/// first column of B that does not lie in col(V).
Matrix min_norm_solve(const Matrix& v, const Matrix& b, double rank_tol = kDefaultRankTol);

/// Dense CSV: one row per line, comma separated decimal reals, no header.
Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& out, const Matrix& a);
void write_matrix_csv(const std::string& path, const Matrix& a);

}  // namespace sqrtnuc
