#pragma once
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinlab {

using cplx = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using MatrixR = Eigen::MatrixXd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
};

struct EigenPairs {
    VectorR values;   // ascending
    MatrixC vectors;  // columns
};

struct RealEigenPairs {
    VectorR values;   // ascending
    MatrixR vectors;
};

struct SvdResult {
    MatrixC u;
    VectorR sigma;  // descending
    MatrixC v;
};

constexpr double kHermitianTol = 1e-12;

bool is_hermitian(const MatrixC& m, double tol = kHermitianTol);

EigenPairs hermitian_eigen(const MatrixC& m);

// Lowest `count` eigenpairs of a real symmetric matrix (LAPACK dsyevr).
RealEigenPairs symmetric_lowest(const MatrixR& m, int count);

// All eigenvalues (ascending) of a real symmetric matrix, no vectors.
VectorR symmetric_eigenvalues(const MatrixR& m);

// Lowest `count` eigenpairs of a symmetric tridiagonal matrix (LAPACK dstevr).
RealEigenPairs tridiagonal_lowest(std::span<const double> diag, std::span<const double> offdiag, int count);

SvdResult svd(const MatrixC& m);
VectorR singular_values(const MatrixR& m);

double elliptic_K(double k);

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);

double log_binomial(int n, int k);
double hypergeometric_pmf(int N, int n, int L, int l);

double binary_entropy(double p);

}  // namespace spinlab
