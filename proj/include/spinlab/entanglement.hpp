#pragma once
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spinlab/numerics.hpp"

namespace spinlab {

using ProbVector = std::vector<double>;

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // descending
    int rank = 0;
};

constexpr double kSchmidtCutoff = 1e-12;
constexpr double kProbTol = 1e-10;

SchmidtDecomposition schmidt(std::span<const cplx> state, long dimA, long dimB);
SchmidtDecomposition schmidt(const VectorC& state, long dimA, long dimB);

double entanglement_entropy(const SchmidtDecomposition& s);

// Entropy of the first L sites of a real 2^N state (site 0 = most significant bit).
double real_state_block_entropy(const VectorR& state, int N, int L);
double shannon_entropy(std::span<const double> p);

// true iff x ≺ y (y is at least as ordered as x)
bool majorizes(std::span<const double> x, std::span<const double> y);

ProbVector mode_probs(double omega);

struct StochasticWeights {
    double p0 = 0.0;  // identity
    double p1 = 0.0;  // swap
    bool valid = false;
};

StochasticWeights doubly_stochastic_weights(double omega, double omega_tilde);

// Max deviation between the weighted mixture of permuted mode_probs(omega_tilde) and mode_probs(omega).
double reconstruction_error(const StochasticWeights& w, double omega, double omega_tilde);

// Mode energy as a function of (mode index, flow parameter).
using ModeDispersion = std::function<double(int, double)>;

struct FlowCheck {
    bool holds = true;
    std::vector<double> quantities;  // one per checked mode
    std::vector<int> excluded;       // modes with vanishing energy
};

FlowCheck infinitesimal_flow_check(const ModeDispersion& disp, double tau, double dtau, int modes);

double ising_mode_dispersion(double lambda, int j);

// Ising modes parametrized by the mass tau = |1 - lambda| on one side of the critical point.
ModeDispersion ising_flow_dispersion(bool above_critical);

ProbVector truncated_spectrum(double lambda, int modes);

struct FlowStep {
    double lambda_from = 0.0;
    double lambda_to = 0.0;
    bool majorized = false;
    bool strict = false;
    double entropy_from = 0.0;
    double entropy_to = 0.0;
    std::vector<StochasticWeights> weights;  // per nonzero mode
    double max_reconstruction_error = 0.0;
};

struct FlowAudit {
    std::vector<FlowStep> steps;
    std::vector<int> violations;  // indices into steps
    bool ok() const { return violations.empty(); }
};

FlowAudit flow_majorization_audit(std::span<const double> lambda_path, int modes);

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

Rational make_rational(long long num, long long den);
Rational kac_central_charge(int m);
Rational kac_weight(int m, int p, int q);

}  // namespace spinlab
