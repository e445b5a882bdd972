#include "spinlab/bethe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "spinlab/entanglement.hpp"
#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kContinuationStep = 0.05;

void validate(const XXZParams& p) {
    if (p.N < 2 || p.N % 2 != 0 || p.N > kMaxBetheSites) throw DomainError("XXZ chain length must be even, <= 18");
    if (!std::isfinite(p.gamma) || !std::isfinite(p.lambda)) throw DomainError("XXZ parameters must be finite");
}

// Phases on the branch nearest to `ref`, which carries the continuation from gamma = 0.
MatrixR phase_matrix(const std::vector<double>& k, double gamma, const MatrixR& ref) {
    const int r = static_cast<int>(k.size());
    MatrixR th = MatrixR::Zero(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            double t = gamma == 0.0 ? kPi : scattering_phase(k[i], k[j], gamma);
            t += 2.0 * kPi * std::round((ref(i, j) - t) / (2.0 * kPi));
            th(i, j) = t;
            th(j, i) = -t;
        }
    return th;
}

MatrixR xx_phases(int r) {
    MatrixR th = MatrixR::Zero(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            th(i, j) = kPi;
            th(j, i) = -kPi;
        }
    return th;
}

struct Attempt {
    std::vector<double> k;
    MatrixR phases;
    double residual;
    int iterations;
};

Attempt iterate(const std::vector<int>& I, std::vector<double> k, MatrixR ref, int N, double gamma, double damping,
                int max_iter) {
    const int r = static_cast<int>(k.size());
    double res = INFINITY;
    int it = 0;
    for (; it < max_iter; ++it) {
        ref = phase_matrix(k, gamma, ref);
        res = 0.0;
        std::vector<double> next(r);
        for (int i = 0; i < r; ++i) {
            const double sum = ref.row(i).sum();
            res = std::max(res, std::abs(N * k[i] - 2.0 * kPi * I[i] - sum));
            next[i] = (2.0 * kPi * I[i] + sum) / N;
        }
        if (res < 1e-12 || !std::isfinite(res)) break;
        for (int i = 0; i < r; ++i) k[i] = (1.0 - damping) * k[i] + damping * next[i];
    }
    return {k, ref, res, it};
}

std::vector<uint32_t> sector_states(int N, int r) {
    std::vector<uint32_t> out;
    for (uint32_t s = 0; s < (1u << N); ++s)
        if (std::popcount(s) == r) out.push_back(s);
    return out;
}

}  // namespace

std::vector<int> ground_quantum_numbers(int N, int r) {
    if (r < 0 || 2 * r > N) throw DomainError("ground_quantum_numbers: need 0 <= r <= N/2");
    std::vector<int> I(r);
    for (int i = 1; i <= r; ++i) I[i - 1] = N / 2 - r - 1 + 2 * i;
    return I;
}

double scattering_phase(double ki, double kj, double gamma) {
    const cplx eK = std::polar(1.0, ki + kj);
    const cplx num = 1.0 + eK - 2.0 * gamma * std::polar(1.0, ki);
    const cplx den = 1.0 + eK - 2.0 * gamma * std::polar(1.0, kj);
    return kPi + std::arg(num / den);
}

double bethe_residual(const BetheSolution& s, int N) {
    double res = 0.0;
    for (int i = 0; i < s.r; ++i)
        res = std::max(res, std::abs(N * s.momenta[i] - 2.0 * kPi * s.quantum_numbers[i] - s.phases.row(i).sum()));
    return res;
}

BetheSolution solve_bethe(const XXZParams& p, int r, uint64_t seed) {
    validate(p);
    if (r < 1 || 2 * r > p.N) throw DomainError("solve_bethe: need 1 <= r <= N/2");
    const int N = p.N;
    BetheSolution sol;
    sol.r = r;
    sol.quantum_numbers = ground_quantum_numbers(N, r);
    std::vector<double> k0(r);
    for (int i = 1; i <= r; ++i) k0[i - 1] = kPi * (N - r - 1 + 2 * i) / N;

    // Continuation in gamma from the XX limit keeps every phase on a single branch.
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(p.gamma) / kContinuationStep)));
    Attempt best{k0, xx_phases(r), INFINITY, 0};
    int total_iterations = 0;
    for (int s = 1; s <= steps; ++s) {
        best = iterate(sol.quantum_numbers, best.k, best.phases, N, p.gamma * s / steps, 0.5, 20000);
        total_iterations += best.iterations;
    }
    best.iterations = total_iterations;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, 0.05);
    const Attempt anchor = best;
    int restarts = 0;
    while (best.residual > 1e-10 && restarts < 10) {
        ++restarts;
        std::vector<double> k = anchor.k;
        for (double& v : k) v += jitter(rng);
        Attempt a = iterate(sol.quantum_numbers, k, anchor.phases, N, p.gamma, 0.25, 40000);
        if (a.residual < best.residual) best = a;
    }
    if (!(best.residual <= kBetheTolerance))
        throw SolverError("solve_bethe: no convergence", best.residual);
    sol.momenta = best.k;
    sol.phases = best.phases;
    sol.residual = bethe_residual(sol, N);
    sol.iterations = best.iterations;
    sol.restarts = restarts;
    sol.energy = bethe_energy(sol, p);
    return sol;
}

double bethe_energy(const BetheSolution& s, const XXZParams& p) {
    double e = p.gamma * p.N / 4.0;
    for (double k : s.momenta) e -= p.gamma - std::cos(k);
    return e - p.lambda * (p.N / 2.0 - s.r);
}

SpinWavefunction bethe_amplitudes(const BetheSolution& s, const XXZParams& p) {
    validate(p);
    if (s.r > kMaxAmplitudeMagnons) throw ResourceError("bethe_amplitudes: too many magnons for permutation sum");
    const int N = p.N, r = s.r;
    SpinWavefunction w;
    w.N = N;
    w.r = r;
    w.amplitudes = VectorC::Zero(1L << N);
    if (r == 0) {
        w.amplitudes[0] = 1.0;
        return w;
    }
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    std::vector<double> half_phase;
    do {
        double t = 0.0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) t += s.phases(perm[i], perm[j]);
        perms.push_back(perm);
        half_phase.push_back(0.5 * t);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<int> sites(r);
    for (uint32_t st : sector_states(N, r)) {
        // sites in increasing order, 1-based
        int c = 0;
        for (int l = 1; l <= N; ++l)
            if (st & (1u << (N - l))) sites[c++] = l;
        cplx a = 0.0;
        for (size_t q = 0; q < perms.size(); ++q) {
            double ph = half_phase[q];
            for (int j = 0; j < r; ++j) ph += s.momenta[perms[q][j]] * sites[j];
            a += std::polar(1.0, ph);
        }
        w.amplitudes[st] = a;
    }
    const double n = w.amplitudes.norm();
    if (!(n > 0.0)) throw NumericError("bethe_amplitudes: vanishing wavefunction");
    w.amplitudes /= n;
    // Lexicographically smallest site tuple with nonzero amplitude gets a real positive amplitude.
    // Descending bit value of the state word orders site tuples lexicographically.
    std::vector<uint32_t> order = sector_states(N, r);
    std::sort(order.begin(), order.end(), std::greater<>());
    for (uint32_t st : order) {
        const cplx a = w.amplitudes[st];
        if (std::abs(a) > 1e-8) {
            w.amplitudes *= std::conj(a) / std::abs(a);
            break;
        }
    }
    return w;
}

GroundScan ground_state_scan(const XXZParams& p, uint64_t seed) {
    validate(p);
    GroundScan g;
    g.sector_energies.push_back(p.gamma * p.N / 4.0 - p.lambda * p.N / 2.0);
    BetheSolution best;
    best.energy = g.sector_energies[0];
    for (int r = 1; 2 * r <= p.N; ++r) {
        BetheSolution s = solve_bethe(p, r, seed);
        g.sector_energies.push_back(s.energy);
        if (s.energy < best.energy - 1e-12) best = std::move(s);
    }
    g.r_star = best.r;
    g.solution = best;
    g.state = bethe_amplitudes(best, p);
    return g;
}

double xxz_block_entropy(const SpinWavefunction& w, int L) {
    if (L < 1 || L > w.N - 1) throw DomainError("xxz_block_entropy: need 1 <= L <= N-1");
    return entanglement_entropy(schmidt(w.amplitudes, 1L << L, 1L << (w.N - L)));
}

XXZDenseResult xxz_dense_sector(const XXZParams& p, int r) {
    validate(p);
    const int N = p.N;
    if (r < 0 || r > N) throw DomainError("xxz_dense_sector: invalid magnon count");
    const auto states = sector_states(N, r);
    std::vector<int32_t> index(1u << N, -1);
    for (size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<int32_t>(i);
    const long dim = static_cast<long>(states.size());
    MatrixR H = MatrixR::Zero(dim, dim);
    for (long c = 0; c < dim; ++c) {
        const uint32_t s = states[c];
        H(c, c) += -0.5 * p.lambda * (N - 2 * r);
        for (int j = 0; j < N; ++j) {
            const uint32_t bj = 1u << (N - 1 - j), bk = 1u << (N - 1 - (j + 1) % N);
            const bool equal = ((s & bj) != 0) == ((s & bk) != 0);
            H(c, c) += equal ? 0.25 * p.gamma : -0.25 * p.gamma;
            if (!equal) H(index[s ^ bj ^ bk], c) += 0.5;
        }
    }
    auto eig = symmetric_lowest(H, 1);
    XXZDenseResult out;
    out.energy = eig.values[0];
    out.state = VectorR::Zero(1L << N);
    for (long c = 0; c < dim; ++c) out.state[states[c]] = eig.vectors(c, 0);
    return out;
}

}  // namespace spinlab
