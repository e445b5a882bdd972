#pragma once
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/numerics.hpp"

namespace spinlab {

struct UniformMPS {
    int d = 0;
    int D = 0;
    std::vector<MatrixC> tensors;  // d matrices D x D
    MatrixC boundary;              // identity for periodic chains

    bool is_canonical(double tol = 1e-10) const;
};

UniformMPS make_mps(std::vector<MatrixC> tensors);

using SiteTensor = std::vector<MatrixC>;  // d matrices, Dl x Dr

std::vector<SiteTensor> mps_from_state(const VectorC& state, int N, int d);
VectorC contract_open_mps(const std::vector<SiteTensor>& sites);

bool canonical_check(const UniformMPS& m);

struct TransferMatrix {
    MatrixC e;
    VectorC eigenvalues;  // descending modulus
};

TransferMatrix transfer_matrix(const UniformMPS& m);
double mps_norm(const UniformMPS& m, int N);

// Operator insertion sum_{s,t} <s|O|t> conj(A^s) (x) A^t.
MatrixC insertion_matrix(const UniformMPS& m, const MatrixC& op);

// Finite periodic chain when N is given (unnormalized, like mps_norm); infinite chain otherwise.
cplx two_point(const UniformMPS& m, const MatrixC& O1, const MatrixC& O2, int r, std::optional<int> N = std::nullopt);
cplx connected_two_point(const UniformMPS& m, const MatrixC& O1, const MatrixC& O2, int r);
cplx one_point(const UniformMPS& m, const MatrixC& O);

constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();
std::vector<double> correlation_lengths(const TransferMatrix& t);

UniformMPS rg_step(const UniformMPS& m);

UniformMPS aklt_family(double mu);
UniformMPS aklt_mps();  // spin-1 chain, three Pauli tensors
double aklt_flow_entropy(int L, double mu);

// Reduced density of n contiguous sites of the infinite chain, explicit over d^n configurations.
MatrixC block_density(const UniformMPS& m, int n);
// Entropy of n contiguous sites through the D^2 x D^2 Gram form of E^n.
double mps_block_entropy(const UniformMPS& m, int n);

enum class FixedPointKind { Product, Ghz, ClusterValence, WType, DomainWall, SymmetricD2, None };
std::string to_string(FixedPointKind k);

struct FixedPointLabel {
    FixedPointKind kind = FixedPointKind::None;
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

FixedPointLabel classify_fixed_point(const UniformMPS& m, double tol = 1e-8);
UniformMPS symmetric_fixed_point(int D);

UniformMPS product_fixed_point();
UniformMPS ghz_fixed_point();
UniformMPS cluster_fixed_point();
UniformMPS w_fixed_point(double theta);
UniformMPS domain_wall_fixed_point(double alpha, double beta, double theta);

struct JordanInfo {
    bool diagonalizable = true;
    bool idempotent = false;
    int rank = 0;
};
JordanInfo jordan_structure(const MatrixC& e, double tol = 1e-8);

// Max distance of a greedy nearest-neighbour pairing between two complex multisets.
double multiset_distance(const VectorC& a, const VectorC& b);

UniformMPS parse_tensor_text(const std::string& text);
std::string format_tensor_text(const UniformMPS& m);

}  // namespace spinlab
