#pragma once
#include <vector>

#include "spinlab/numerics.hpp"

namespace spinlab {

struct LMGParams {
    double gamma = 0.0;
    double h = 0.0;
    int N = 2;
};

// Coefficients over symmetric Dicke states, index n = number of up spins.
struct DickeVector {
    int N = 0;
    VectorR coeffs;
};

// Which member of a near-degenerate parity doublet to report.
enum class ParityBranch { Symmetric, Broken };

constexpr int kLMGMaxN = 5000;

// <m+2|(S+)^2|m> for total spin N/2.
double ladder_squared_element(int N, double m);

MatrixR lmg_hamiltonian_dicke(const LMGParams& p);

struct LMGGroundState {
    DickeVector state;
    double energy = 0.0;
    double doublet_splitting = 0.0;  // lowest energy of the other parity sector minus energy
};

LMGGroundState lmg_ground(const LMGParams& p, ParityBranch branch = ParityBranch::Symmetric);
DickeVector lmg_ground_state(const LMGParams& p, ParityBranch branch = ParityBranch::Symmetric);

DickeVector dicke_basis_state(int N, int n);
MatrixR dicke_reduced_density(const DickeVector& v, int L);
double dicke_block_entropy(const DickeVector& v, int L);
double lmg_block_entropy(const LMGParams& p, int L, ParityBranch branch = ParityBranch::Symmetric);

// Additive constant of the gaussian-limit entropy, 0.5*log2(pi*e/2).
double gaussian_entropy_offset();

double isotropic_entropy_closed_form(int N, int L, double h, double offset = gaussian_entropy_offset());

// Offset that makes the closed form exact at (N, L, h) for gamma = 1.
double calibrate_isotropic_offset(int N, int L, double h);

struct LMGFitGrid {
    int N = 2000;
    double field_gamma = 0.0;
    int field_L = 1000;
    std::vector<double> field_h{1.02, 1.05, 1.1, 1.2};
    double size_gamma = 0.0;
    std::vector<int> size_L{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    int anisotropy_L = 1000;
    std::vector<double> anisotropy_gamma{0.0, 0.25, 0.5};
};

struct LMGFitSuite {
    FitResult field_approach;  // S vs log2|1-h|
    FitResult critical_size;   // S vs log2(L(N-L)/N) at h=1
    FitResult anisotropy;      // S vs log2(1-gamma) at h=1
};

LMGFitSuite lmg_fit_suite(const LMGFitGrid& grid);

struct LMGDenseResult {
    double energy = 0.0;
    VectorR state;
    std::vector<double> entropies;  // S_1..S_{N-1}
};

// Full 2^N spin model with all-to-all couplings, N <= 12.
LMGDenseResult lmg_dense_oracle(const LMGParams& p);

}  // namespace spinlab
