#include "spinlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <lapacke.h>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

void require_finite(const MatrixC& m) {
    if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
}

}  // namespace

bool is_hermitian(const MatrixC& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigenPairs hermitian_eigen(const MatrixC& m) {
    require_finite(m);
    if (!is_hermitian(m)) throw ContractError("hermitian_eigen: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<MatrixC> es(m);
    if (es.info() != Eigen::Success) throw NumericError("hermitian_eigen: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

RealEigenPairs symmetric_lowest(const MatrixR& m, int count) {
    const lapack_int n = static_cast<lapack_int>(m.rows());
    if (m.cols() != n || n == 0) throw DomainError("symmetric_lowest: square non-empty matrix required");
    count = std::clamp(count, 1, static_cast<int>(n));
    MatrixR a = m;  // dsyevr destroys its input
    lapack_int found = 0;
    VectorR w(n);
    MatrixR z(n, count);
    std::vector<lapack_int> support(2 * static_cast<size_t>(count));
    lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, count,
                                     0.0, &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != count) throw NumericError("symmetric_lowest: dsyevr failed");
    return {w.head(count), z};
}

VectorR symmetric_eigenvalues(const MatrixR& m) {
    const lapack_int n = static_cast<lapack_int>(m.rows());
    if (m.cols() != n) throw DomainError("symmetric_eigenvalues: square matrix required");
    if (n == 0) return {};
    MatrixR a = m;
    VectorR w(n);
    if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data()) != 0)
        throw NumericError("symmetric_eigenvalues: dsyevd failed");
    return w;
}

RealEigenPairs tridiagonal_lowest(std::span<const double> diag, std::span<const double> offdiag, int count) {
    const lapack_int n = static_cast<lapack_int>(diag.size());
    if (n == 0 || offdiag.size() + 1 != diag.size())
        throw DomainError("tridiagonal_lowest: inconsistent band sizes");
    count = std::clamp(count, 1, static_cast<int>(n));
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.push_back(0.0);
    lapack_int found = 0;
    VectorR w(n);
    MatrixR z(n, count);
    std::vector<lapack_int> support(2 * static_cast<size_t>(count));
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, count, 0.0,
                                     &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != count) throw NumericError("tridiagonal_lowest: dstevr failed");
    return {w.head(count), z};
}

SvdResult svd(const MatrixC& m) {
    require_finite(m);
    Eigen::BDCSVD<MatrixC> s(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {s.matrixU(), s.singularValues(), s.matrixV()};
}

VectorR singular_values(const MatrixR& m) {
    if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
    if (m.size() == 0) return {};
    return Eigen::BDCSVD<MatrixR>(m).singularValues();
}

double elliptic_K(double k) {
    if (!(k >= 0.0) || k >= 1.0) throw DomainError("elliptic_K: modulus must lie in [0,1)");
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    for (int it = 0; it < 64 && std::abs(a - b) >= 1e-15; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DomainError("linear_fit: length mismatch");
    const size_t n = xs.size();
    if (n < 2) throw DomainError("linear_fit: need at least two points");
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double spread = std::max(std::abs(*std::max_element(xs.begin(), xs.end())), 1.0);
    if (sxx <= 1e-24 * spread * spread * n) throw DomainError("linear_fit: degenerate abscissae");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    for (size_t i = 0; i < n; ++i)
        r.max_abs_residual = std::max(r.max_abs_residual, std::abs(ys[i] - (r.slope * xs[i] + r.intercept)));
    return r;
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -INFINITY;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double hypergeometric_pmf(int N, int n, int L, int l) {
    if (L < 0 || L > N || n < 0 || n > N) throw DomainError("hypergeometric_pmf: invalid bounds");
    if (l < 0 || l > L || l > n || n - l > N - L) return 0.0;
    return std::exp(log_binomial(L, l) + log_binomial(N - L, n - l) - log_binomial(N, n));
}

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

}  // namespace spinlab
