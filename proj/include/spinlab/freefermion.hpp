#pragma once
#include <span>
#include <string>
#include <vector>

#include "spinlab/numerics.hpp"

namespace spinlab {

struct XYParams {
    double gamma = 1.0;
    double lambda = 0.0;
};

enum class PhaseLabel { CriticalXX, CriticalXY, Gapped1FP, Gapped2FP };
std::string to_string(PhaseLabel l);

struct FermiData {
    std::vector<double> fermi_points;
    double mass = 0.0;
    double velocity = 0.0;
    PhaseLabel phase_label = PhaseLabel::Gapped1FP;
};

// N == 0 selects the thermodynamic limit.
struct ChainSize {
    int N = 0;
    static ChainSize infinite() { return {0}; }
    static ChainSize finite(int n) { return {n}; }
    bool is_infinite() const { return N == 0; }
};

// Fermionic boundary sector of a finite periodic chain.
// Antiperiodic momenta <-> even spin parity, periodic <-> odd.
enum class Sector { Antiperiodic, Periodic };

struct CorrelationKernel {
    int L = 0;
    MatrixR entries;  // (n,m) -> g(n-m)
};

struct BlockSpectrum {
    std::vector<double> nus;
    std::vector<double> occupations() const;
};

double dispersion(const XYParams& p, double phi);
double bogoliubov_angle(const XYParams& p, double phi);
FermiData fermi_analysis(const XYParams& p);

double sector_energy(const XYParams& p, int N, Sector s);
Sector ground_sector(const XYParams& p, int N);

double g_kernel(const XYParams& p, int d, ChainSize size);
// g(d) for d in [-dmax, dmax], index d + dmax.
std::vector<double> g_kernel_range(const XYParams& p, int dmax, ChainSize size);

CorrelationKernel block_correlation(const XYParams& p, int L, ChainSize size);
BlockSpectrum mode_spectrum(const CorrelationKernel& k);
double spectrum_entropy(const BlockSpectrum& s);
double block_entropy(const XYParams& p, int L, ChainSize size);
// Entropies for every L in the list, sharing one kernel evaluation.
std::vector<double> block_entropies(const XYParams& p, std::span<const int> Ls, ChainSize size);

FitResult entropy_scaling_fit(const XYParams& p, std::span<const int> Ls, ChainSize size);
double saturation_entropy(const XYParams& p);
double saturation_entropy_for_mass(double mass);
double central_charge_from_slope(double slope);

constexpr int kDenseMaxDim = 8192;

struct DenseOracleResult {
    double energy = 0.0;
    VectorR state;                  // 2^N amplitudes, site 0 is the most significant bit, bit 1 = spin down
    std::vector<double> entropies;  // S_1..S_{N-1}
    int parity = 0;                 // +1 / -1, 0 when the breaking field mixes sectors
    double even_energy = 0.0;
    double odd_energy = 0.0;
};

// breaking_field couples to the staggered x magnetization, the order parameter of the
// coupling sign used here.
DenseOracleResult dense_oracle(const XYParams& p, int N, double breaking_field = 0.0);

}  // namespace spinlab
