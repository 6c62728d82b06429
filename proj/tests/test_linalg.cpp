#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "sqrtnuc/linalg.hpp"

using namespace sqrtnuc;

namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix a(rows, cols);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
    return a;
}

}  // namespace

TEST(Svd, ReconstructsTallAndWide) {
    for (auto [r, c] : {std::pair{12, 5}, std::pair{5, 12}, std::pair{7, 7}, std::pair{1, 9}}) {
        const Matrix a = gaussian(r, c, 3 + r * 31 + c);
        const SvdFactors f = svd(a);
        const Eigen::Index p = std::min(r, c);
        ASSERT_EQ(f.width(), p);
        EXPECT_LT((f.compose(f.singulars) - a).norm(), 1e-10 * a.norm());
        EXPECT_LT((f.left.transpose() * f.left - Matrix::Identity(p, p)).norm(), 1e-10);
        EXPECT_LT((f.right.transpose() * f.right - Matrix::Identity(p, p)).norm(), 1e-10);
        for (Eigen::Index i = 1; i < p; ++i) EXPECT_GE(f.singulars(i - 1), f.singulars(i));
        EXPECT_GE(f.singulars(p - 1), 0.0);
    }
}

TEST(Svd, SingularValuesMatchFactorisation) {
    const Matrix a = gaussian(9, 4, 11);
    EXPECT_LT((singular_values(a) - svd(a).singulars).norm(), 1e-12);
}

TEST(Svd, EmptyAndNonFinite) {
    EXPECT_EQ(svd(Matrix(0, 3)).width(), 0);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(svd(bad), std::invalid_argument);
}

TEST(Svd, ZeroMatrixHasRankZero) {
    const SvdFactors f = svd(Matrix::Zero(4, 3));
    EXPECT_EQ(f.rank(), 0);
    EXPECT_EQ(numerical_rank(Matrix::Zero(4, 3)), 0);
}

TEST(Svd, NumericalRankOfProduct) {
    const Matrix a = gaussian(20, 2, 5) * gaussian(2, 15, 6);
    EXPECT_EQ(numerical_rank(a), 2);
    EXPECT_EQ(svd(a).rank(), 2);
}

TEST(Norms, DiagonalExamples) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 1;
    EXPECT_NEAR(norm_schatten(d, Schatten::One), 4.0, 1e-14);
    EXPECT_NEAR(norm_schatten(d, Schatten::Two), std::sqrt(10.0), 1e-14);
    EXPECT_NEAR(norm_schatten(d, Schatten::Infinity), 3.0, 1e-14);
    EXPECT_EQ(sup_norm(-d), 3.0);
}

TEST(Norms, FrobeniusIsSchattenTwo) {
    const Matrix a = gaussian(6, 8, 8);
    EXPECT_NEAR(singular_values(a).norm(), norm_schatten(a, Schatten::Two), 1e-12);
}

TEST(Projector, IdentityAndFirstColumn) {
    const ColumnSpaceProjector full = column_projector(Matrix::Identity(4, 4));
    EXPECT_EQ(full.rank(), 4);
    const Matrix b = gaussian(4, 3, 1);
    EXPECT_LT((full.apply(b) - b).norm(), 1e-12);

    Matrix e1 = Matrix::Zero(4, 1);
    e1(0, 0) = 1.0;
    const Matrix pb = column_projector(e1).apply(b);
    EXPECT_NEAR(pb.row(0).norm(), b.row(0).norm(), 1e-14);
    EXPECT_EQ(pb.bottomRows(3).norm(), 0.0);
}

TEST(Projector, ZeroBasisIsZeroMap) {
    const ColumnSpaceProjector p = column_projector(Matrix::Zero(5, 3));
    EXPECT_EQ(p.rank(), 0);
    const Matrix b = gaussian(5, 2, 2);
    EXPECT_EQ(p.apply(b).norm(), 0.0);
    EXPECT_EQ(p.apply_complement(b), b);
}

TEST(Projector, IdempotentAndOrthogonal) {
    const Matrix v = gaussian(10, 4, 21);
    const ColumnSpaceProjector p = column_projector(v);
    EXPECT_EQ(p.rank(), 4);
    const Matrix b = gaussian(10, 6, 22);
    const Matrix pb = p.apply(b);
    EXPECT_LT((p.apply(pb) - pb).norm(), 1e-12);
    EXPECT_LT((pb.transpose() * p.apply_complement(b)).norm(), 1e-10);
    EXPECT_LT((v.transpose() * p.apply_complement(b)).norm(), 1e-10);
}

TEST(MinNormSolve, Examples) {
    const Matrix b = gaussian(3, 2, 4);
    EXPECT_LT((min_norm_solve(Matrix::Identity(3, 3), b) - b).norm(), 1e-12);
    EXPECT_EQ(min_norm_solve(gaussian(3, 2, 5), Matrix::Zero(3, 2)).norm(), 0.0);

    Matrix v(2, 1), rhs(2, 1);
    v << 1, 1;
    rhs << 3, 3;
    const Matrix a = min_norm_solve(v, rhs);
    ASSERT_EQ(a.rows(), 1);
    EXPECT_NEAR(a(0, 0), 3.0, 1e-12);
}

TEST(MinNormSolve, MatchesPseudoInverseOnRankDeficientV) {
    // Independent reference: complete orthogonal decomposition pseudo-inverse.
    const Matrix v = gaussian(8, 2, 30) * gaussian(2, 5, 31);
    const Matrix b = v * gaussian(5, 3, 32);
    const Eigen::MatrixXd pinv = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(v).pseudoInverse();
    const Matrix want = pinv * b;
    const Matrix got = min_norm_solve(v, b);
    EXPECT_LT((got - want).norm(), 1e-8 * (1.0 + want.norm()));
    EXPECT_LT((v * got - b).norm(), 1e-9 * (1.0 + b.norm()));
}

TEST(MinNormSolve, RejectsColumnOutsideRange) {
    Matrix v(2, 1), b(2, 2);
    v << 1, 0;
    b << 1, 1, 0, 1;
    try {
        min_norm_solve(v, b);
        FAIL() << "expected domain_error";
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos);
    }
}

TEST(MatrixCsv, RoundTripIsExact) {
    const Matrix a = gaussian(4, 3, 40) * 1e-3;
    std::stringstream ss;
    write_matrix_csv(ss, a);
    const Matrix back = read_matrix_csv(ss);
    EXPECT_EQ(back, a);
}

TEST(MatrixCsv, RejectsMalformed) {
    std::stringstream ragged("1,2\n3\n");
    EXPECT_THROW(read_matrix_csv(ragged), std::runtime_error);
    std::stringstream word("1,x\n");
    EXPECT_THROW(read_matrix_csv(word), std::runtime_error);
    std::stringstream empty("");
    EXPECT_THROW(read_matrix_csv(empty), std::runtime_error);
    EXPECT_THROW(read_matrix_csv(std::string("/nonexistent/m.csv")), std::runtime_error);
}
