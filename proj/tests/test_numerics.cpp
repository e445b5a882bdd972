#include <gtest/gtest.h>

#include <boost/math/distributions/hypergeometric.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "spinlab/errors.hpp"
#include "spinlab/numerics.hpp"

using namespace spinlab;

namespace {

MatrixC random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    MatrixC a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

double k_by_quadrature(double k) {
    auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 30, 1e-14);
}

}  // namespace

TEST(HermitianEigen, IdentityAndPauliX) {
    auto id = hermitian_eigen(MatrixC::Identity(2, 2));
    EXPECT_NEAR(id.values[0], 1.0, 1e-14);
    EXPECT_NEAR(id.values[1], 1.0, 1e-14);
    MatrixC x(2, 2);
    x << 0, 1, 1, 0;
    auto px = hermitian_eigen(x);
    EXPECT_NEAR(px.values[0], -1.0, 1e-14);
    EXPECT_NEAR(px.values[1], 1.0, 1e-14);
}

TEST(HermitianEigen, RandomResidualAndUnitarity) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        MatrixC m = random_hermitian(6, rng);
        auto e = hermitian_eigen(m);
        const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
        for (int k = 0; k < 6; ++k) {
            VectorC r = m * e.vectors.col(k) - e.values[k] * e.vectors.col(k);
            EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10 * scale);
        }
        EXPECT_LT((e.vectors.adjoint() * e.vectors - MatrixC::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-10);
        for (int k = 1; k < 6; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
    }
}

TEST(HermitianEigen, TraceAndSquareProperties) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        MatrixC m = random_hermitian(4, rng);
        auto e = hermitian_eigen(m);
        EXPECT_NEAR(e.values.sum(), m.trace().real(), 1e-10);
        MatrixC sq = m * m;
        auto e2 = hermitian_eigen(0.5 * (sq + sq.adjoint()));
        std::vector<double> squares;
        for (double v : e.values) squares.push_back(v * v);
        std::sort(squares.begin(), squares.end());
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(e2.values[k], squares[k], 1e-10);
    }
}

TEST(HermitianEigen, RejectsNonHermitian) {
    MatrixC m(2, 2);
    m << 0, 1, 0, 0;
    EXPECT_THROW(hermitian_eigen(m), ContractError);
}

TEST(SymmetricSolvers, MatchDenseEigen) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    MatrixR a(40, 40);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) a(i, j) = g(rng);
    MatrixR m = a + a.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixR> ref(m);
    auto low = symmetric_lowest(m, 3);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(low.values[k], ref.eigenvalues()[k], 1e-10);
        EXPECT_NEAR(std::abs(low.vectors.col(k).dot(ref.eigenvectors().col(k))), 1.0, 1e-9);
    }
    VectorR all = symmetric_eigenvalues(m);
    EXPECT_LT((all - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);

    std::vector<double> diag(30), off(29);
    for (auto& x : diag) x = g(rng);
    for (auto& x : off) x = g(rng);
    MatrixR t = MatrixR::Zero(30, 30);
    for (int i = 0; i < 30; ++i) t(i, i) = diag[i];
    for (int i = 0; i < 29; ++i) t(i, i + 1) = t(i + 1, i) = off[i];
    Eigen::SelfAdjointEigenSolver<MatrixR> tref(t);
    auto tl = tridiagonal_lowest(diag, off, 2);
    EXPECT_NEAR(tl.values[0], tref.eigenvalues()[0], 1e-11);
    EXPECT_NEAR(tl.values[1], tref.eigenvalues()[1], 1e-11);
}

TEST(Svd, SmallCases) {
    MatrixC d = MatrixC::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = 3;
    auto s = svd(d);
    EXPECT_NEAR(s.sigma[0], 3.0, 1e-14);
    EXPECT_NEAR(s.sigma[1], 1.0, 1e-14);
    auto z = svd(MatrixC::Zero(2, 3));
    ASSERT_EQ(z.sigma.size(), 2);
    EXPECT_EQ(z.sigma[0], 0.0);
    EXPECT_EQ(z.sigma[1], 0.0);
    MatrixC x(2, 2);
    x << 0, 1, 1, 0;
    auto sx = svd(x);
    EXPECT_NEAR(sx.sigma[0], 1.0, 1e-14);
    EXPECT_NEAR(sx.sigma[1], 1.0, 1e-14);
}

TEST(Svd, ReconstructionAndAdjointInvariance) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        MatrixC m(4, 6);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) m(i, j) = cplx(g(rng), g(rng));
        auto s = svd(m);
        MatrixC rec = s.u.leftCols(s.sigma.size()) * s.sigma.asDiagonal() * s.v.leftCols(s.sigma.size()).adjoint();
        const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
        EXPECT_LT((rec - m).cwiseAbs().maxCoeff(), 1e-10 * scale);
        auto sa = svd(MatrixC(m.adjoint()));
        for (Eigen::Index k = 0; k < s.sigma.size(); ++k) EXPECT_NEAR(s.sigma[k], sa.sigma[k], 1e-10);
        EXPECT_NEAR(m.squaredNorm(), s.sigma.squaredNorm(), 1e-10 * m.squaredNorm());
        for (Eigen::Index k = 1; k < s.sigma.size(); ++k) EXPECT_GE(s.sigma[k - 1], s.sigma[k]);
    }
}

TEST(EllipticK, ValuesAgainstQuadrature) {
    EXPECT_NEAR(elliptic_K(0.0), std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(elliptic_K(0.5), 1.6857503548, 1e-10);
    for (double k : {0.1, 0.5, 0.9, 0.99, 0.999}) {
        EXPECT_NEAR(elliptic_K(k) / k_by_quadrature(k), 1.0, 1e-12) << k;
        EXPECT_NEAR(elliptic_K(k) / boost::math::ellint_1(k), 1.0, 1e-12) << k;
    }
    EXPECT_GT(elliptic_K(0.999), 4.0);
    EXPECT_THROW(elliptic_K(1.0), DomainError);
    EXPECT_THROW(elliptic_K(-0.1), DomainError);
}

TEST(EllipticK, StrictlyIncreasing) {
    double prev = elliptic_K(0.0);
    for (int i = 1; i < 1000; ++i) {
        const double v = elliptic_K(i / 1000.0);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(LinearFit, ExactConstantAndOutlier) {
    std::vector<double> xs{0, 1, 2}, ys{1, 3, 5};
    auto f = linear_fit(xs, ys);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.max_abs_residual, 0.0, 1e-14);
    std::vector<double> c{4, 4, 4};
    EXPECT_NEAR(linear_fit(xs, c).slope, 0.0, 1e-14);

    std::vector<double> x5{0, 1, 2, 3, 4}, y5{0, 1, 2, 10, 4};
    auto o = linear_fit(x5, y5);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(y5[i] - (o.slope * x5[i] + o.intercept)));
    EXPECT_NEAR(o.max_abs_residual, worst, 1e-12);
    std::vector<double> same{1, 1, 1};
    EXPECT_THROW(linear_fit(same, ys), DomainError);
}

TEST(Hypergeometric, SmallValues) {
    EXPECT_NEAR(hypergeometric_pmf(4, 2, 2, 0), 1.0 / 6, 1e-14);
    EXPECT_NEAR(hypergeometric_pmf(4, 2, 2, 1), 2.0 / 3, 1e-14);
    EXPECT_NEAR(hypergeometric_pmf(4, 2, 2, 2), 1.0 / 6, 1e-14);
    EXPECT_EQ(hypergeometric_pmf(10, 2, 5, 3), 0.0);
    double total = 0.0;
    for (int l = 0; l <= 3; ++l) total += hypergeometric_pmf(10, 5, 3, l);
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_THROW(hypergeometric_pmf(4, 5, 2, 1), DomainError);
}

TEST(Hypergeometric, MatchesEnumeration) {
    for (int N = 2; N <= 12; ++N)
        for (int n = 0; n <= N; ++n)
            for (int L = 0; L <= N; ++L) {
                std::vector<double> count(L + 1, 0.0);
                double total = 0.0;
                for (unsigned w = 0; w < (1u << N); ++w) {
                    if (std::popcount(w) != n) continue;
                    const int in_block = std::popcount(w >> (N - L));
                    count[in_block] += 1.0;
                    total += 1.0;
                }
                for (int l = 0; l <= L; ++l) EXPECT_NEAR(hypergeometric_pmf(N, n, L, l), count[l] / total, 1e-12);
            }
}

TEST(Hypergeometric, LargeNAgainstBoost) {
    boost::math::hypergeometric_distribution<double> dist(1200, 250, 2000);
    for (int l = 100; l <= 200; l += 10)
        EXPECT_NEAR(hypergeometric_pmf(2000, 1200, 250, l) / boost::math::pdf(dist, l), 1.0, 1e-9);
}

TEST(BinaryEntropy, Values) {
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
}
