#pragma once
#include <cstdint>
#include <vector>

#include "spinlab/numerics.hpp"

namespace spinlab {

struct XXZParams {
    double gamma = 1.0;   // z-anisotropy
    double lambda = 0.0;  // z-field
    int N = 8;
};

struct BetheSolution {
    int r = 0;
    std::vector<int> quantum_numbers;
    std::vector<double> momenta;
    MatrixR phases;  // antisymmetric; theta_ij in (0, 2pi] for i < j
    double energy = 0.0;
    double residual = 0.0;
    int iterations = 0;
    int restarts = 0;
};

// Dense 2^N amplitudes; nonzero only on configurations with r down spins.
// Site 1 is the most significant bit, bit value 1 = spin down.
struct SpinWavefunction {
    int N = 0;
    int r = 0;
    VectorC amplitudes;
};

constexpr double kBetheTolerance = 1e-5;
constexpr int kMaxBetheSites = 18;
constexpr int kMaxAmplitudeMagnons = 9;

std::vector<int> ground_quantum_numbers(int N, int r);

// Scattering phase between two magnons with momenta ki, kj. The branch is continuous in
// gamma and equals pi at gamma = 0.
double scattering_phase(double ki, double kj, double gamma);

BetheSolution solve_bethe(const XXZParams& p, int r, uint64_t seed = 0);
double bethe_residual(const BetheSolution& s, int N);
double bethe_energy(const BetheSolution& s, const XXZParams& p);
SpinWavefunction bethe_amplitudes(const BetheSolution& s, const XXZParams& p);

struct GroundScan {
    int r_star = 0;
    BetheSolution solution;
    SpinWavefunction state;
    std::vector<double> sector_energies;  // index r
};

GroundScan ground_state_scan(const XXZParams& p, uint64_t seed = 0);

double xxz_block_entropy(const SpinWavefunction& w, int L);

struct XXZDenseResult {
    double energy = 0.0;
    VectorR state;  // 2^N, same conventions as SpinWavefunction
};

// Exact diagonalization of the fixed-r sector.
XXZDenseResult xxz_dense_sector(const XXZParams& p, int r);

}  // namespace spinlab
