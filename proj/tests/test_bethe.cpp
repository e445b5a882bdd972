#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "spinlab/bethe.hpp"
#include "spinlab/errors.hpp"

using namespace spinlab;

namespace {

constexpr double kPi = std::numbers::pi;

// r spinless fermions on a ring: periodic momenta for odd r, antiperiodic for even r.
double xx_sector_energy(int N, int r, double lambda) {
    std::vector<double> c;
    const double shift = (r % 2 == 1) ? 0.0 : 0.5;
    for (int n = 0; n < N; ++n) c.push_back(std::cos(2.0 * kPi * (n + shift) / N));
    std::sort(c.begin(), c.end());
    double e = 0.0;
    for (int i = 0; i < r; ++i) e += c[i];
    return e - lambda * (N / 2.0 - r);
}

double dense_ground(const XXZParams& p, int* r_out = nullptr, VectorR* state = nullptr) {
    double best = INFINITY;
    for (int r = 0; r <= p.N; ++r) {
        auto d = xxz_dense_sector(p, r);
        if (d.energy < best - 1e-12) {
            best = d.energy;
            if (r_out) *r_out = r;
            if (state) *state = d.state;
        }
    }
    return best;
}

std::vector<double> entropies(const SpinWavefunction& w) {
    std::vector<double> S{0.0};
    for (int L = 1; L < w.N; ++L) S.push_back(xxz_block_entropy(w, L));
    S.push_back(0.0);
    return S;
}

}  // namespace

TEST(QuantumNumbers, Examples) {
    EXPECT_EQ(ground_quantum_numbers(8, 4), (std::vector<int>{1, 3, 5, 7}));
    EXPECT_EQ(ground_quantum_numbers(8, 1), (std::vector<int>{4}));
    EXPECT_TRUE(ground_quantum_numbers(8, 0).empty());
    EXPECT_THROW(ground_quantum_numbers(8, 5), DomainError);
}

TEST(ScatteringPhase, XXLimitAndAntisymmetry) {
    EXPECT_NEAR(scattering_phase(0.3, 1.7, 0.0), kPi, 1e-14);
    for (double g : {0.4, 1.0, 2.0}) {
        const double a = scattering_phase(0.3, 1.7, g), b = scattering_phase(1.7, 0.3, g);
        EXPECT_NEAR(std::remainder(a + b, 2.0 * kPi), 0.0, 1e-12);
    }
}

TEST(SolveBethe, SingleMagnon) {
    for (double g : {0.5, 1.0, 2.0}) {
        XXZParams p{g, 0.3, 8};
        auto s = solve_bethe(p, 1);
        EXPECT_NEAR(s.momenta[0], 2.0 * kPi * 4 / 8, 1e-12);
        const double ef = g * 8 / 4.0 - 0.3 * 8 / 2.0;
        EXPECT_NEAR(s.energy - ef, -(g - std::cos(s.momenta[0])) + 0.3, 1e-12);
        EXPECT_EQ(s.phases.size(), 1);
    }
}

TEST(SolveBethe, XXLimitMatchesFreeFermions) {
    for (int N : {8, 10, 12})
        for (int r = 1; r <= N / 2; ++r) {
            XXZParams p{0.0, 0.4, N};
            EXPECT_NEAR(solve_bethe(p, r).energy, xx_sector_energy(N, r, 0.4), 1e-10) << N << " " << r;
        }
}

TEST(SolveBethe, SectorEnergiesMatchDense) {
    for (double g : {-0.7, 0.5, 1.0, 2.0, 3.0})
        for (int r = 1; r <= 4; ++r) {
            XXZParams p{g, 0.2, 8};
            auto s = solve_bethe(p, r);
            EXPECT_LE(s.residual, kBetheTolerance);
            EXPECT_NEAR(s.energy, xxz_dense_sector(p, r).energy, 1e-5) << g << " " << r;
            EXPECT_NEAR(bethe_residual(s, 8), s.residual, 1e-15);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) EXPECT_EQ(s.phases(i, j), -s.phases(j, i));
        }
}

TEST(SolveBethe, PhasesObeyCotangentRelation) {
    XXZParams p{1.0, 0.0, 10};
    auto s = solve_bethe(p, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            const double ki = s.momenta[i], kj = s.momenta[j];
            const double lhs = 1.0 / std::tan(s.phases(i, j) / 2.0);
            const double rhs = p.gamma * std::sin((ki - kj) / 2.0) / (std::cos((ki + kj) / 2.0) - p.gamma * std::cos((ki - kj) / 2.0));
            EXPECT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, std::abs(rhs)));
        }
}

TEST(BetheEnergy, FormulaExamples) {
    XXZParams p{1.0, 0.0, 8};
    BetheSolution ferro;
    EXPECT_NEAR(bethe_energy(ferro, {1.3, 0.7, 8}), 1.3 * 2 - 0.7 * 4, 1e-15);
    BetheSolution one;
    one.r = 1;
    one.momenta = {kPi};
    EXPECT_NEAR(bethe_energy(one, p), 0.0, 1e-15);
    auto s = solve_bethe({0.8, 0.0, 8}, 3);
    EXPECT_NEAR(bethe_energy(s, {0.8, 0.9, 8}) - bethe_energy(s, {0.8, 0.0, 8}), -0.9 * (4 - 3), 1e-14);
}

TEST(Amplitudes, SingleMagnonPlaneWave) {
    XXZParams p{1.0, 0.0, 8};
    auto w = bethe_amplitudes(solve_bethe(p, 1), p);
    EXPECT_NEAR(w.amplitudes.norm(), 1.0, 1e-10);
    for (int l = 0; l < 8; ++l) EXPECT_NEAR(std::abs(w.amplitudes[1u << l]), 1.0 / std::sqrt(8.0), 1e-12);
}

TEST(Amplitudes, NormalizationSupportAndTranslation) {
    XXZParams p{1.0, 0.3, 8};
    for (int r = 1; r <= 4; ++r) {
        auto s = solve_bethe(p, r);
        auto w = bethe_amplitudes(s, p);
        EXPECT_NEAR(w.amplitudes.norm(), 1.0, 1e-10);
        double ktot = 0.0;
        for (double k : s.momenta) ktot += k;
        const cplx phase = std::polar(1.0, ktot);
        for (uint32_t x = 0; x < 256; ++x) {
            if (std::popcount(x) != r) {
                EXPECT_EQ(w.amplitudes[x], cplx(0.0));
                continue;
            }
            // move every down spin one site to the right (towards less significant bits)
            const uint32_t shifted = ((x >> 1) | ((x & 1u) << 7)) & 0xffu;
            EXPECT_LT(std::abs(w.amplitudes[shifted] - phase * w.amplitudes[x]), 1e-8) << r << " " << x;
        }
    }
}

TEST(Amplitudes, TwoMagnonMatchingCondition) {
    // a(l,l) + a(l+1,l+1) - 2 gamma a(l,l+1) = 0 with the ansatz continued to coinciding sites
    XXZParams p{1.0, 0.0, 8};
    auto s = solve_bethe(p, 2);
    const double k1 = s.momenta[0], k2 = s.momenta[1], th = s.phases(0, 1);
    auto a = [&](int l1, int l2) {
        return std::polar(1.0, k1 * l1 + k2 * l2 + th / 2) + std::polar(1.0, k2 * l1 + k1 * l2 - th / 2);
    };
    for (int l = 1; l <= 8; ++l) EXPECT_LT(std::abs(a(l, l) + a(l + 1, l + 1) - 2.0 * p.gamma * a(l, l + 1)), 1e-10);
}

TEST(Amplitudes, OverlapWithDense) {
    XXZParams p{1.0, 0.0, 8};
    auto s = solve_bethe(p, 4);
    auto w = bethe_amplitudes(s, p);
    auto d = xxz_dense_sector(p, 4);
    EXPECT_GT(std::abs(w.amplitudes.dot(d.state.cast<cplx>())), 0.999);
    BetheSolution many;
    many.r = 10;
    many.momenta.assign(10, 0.1);
    many.phases = MatrixR::Zero(10, 10);
    EXPECT_THROW(bethe_amplitudes(many, {1.0, 0.0, 18}), ResourceError);
}

TEST(GroundScan, FieldRegimes) {
    EXPECT_EQ(ground_state_scan({1.0, 0.0, 10}).r_star, 5);
    auto polarized = ground_state_scan({1.0, 2.5, 10});
    EXPECT_EQ(polarized.r_star, 0);
    for (int L = 1; L < 10; ++L) EXPECT_EQ(xxz_block_entropy(polarized.state, L), 0.0);
    auto mid = ground_state_scan({1.0, 1.05, 10});
    EXPECT_GT(mid.r_star, 0);
    EXPECT_LT(mid.r_star, 5);
    int rd = -1;
    dense_ground({1.0, 1.05, 10}, &rd);
    EXPECT_EQ(mid.r_star, std::min(rd, 10 - rd));
}

TEST(GroundScan, MatchesDenseAcrossParameters) {
    for (int N : {8, 10})
        for (double g : {0.5, 1.0, 2.0})
            for (double l : {0.0, 0.5}) {
                XXZParams p{g, l, N};
                auto scan = ground_state_scan(p);
                VectorR ref;
                const double e = dense_ground(p, nullptr, &ref);
                EXPECT_NEAR(scan.solution.energy, e, 1e-5);
                EXPECT_GT(std::abs(scan.state.amplitudes.dot(ref.cast<cplx>())), 0.999);
            }
}

TEST(BlockEntropy, DualityConcavityAndShape) {
    for (double g : {0.5, 1.0, 2.0}) {
        auto S = entropies(ground_state_scan({g, 0.0, 12}).state);
        for (int L = 1; L < 12; ++L) EXPECT_NEAR(S[L], S[12 - L], 1e-9);
        for (int L = 1; L < 12; ++L) EXPECT_GE(S[L] + 1e-9, 0.5 * (S[L - 1] + S[L + 1]));
    }
    auto heis = entropies(ground_state_scan({1.0, 0.0, 12}).state);
    EXPECT_EQ(std::max_element(heis.begin(), heis.end()) - heis.begin(), 6);
    for (int L = 1; L <= 4; ++L) EXPECT_NEAR(heis[L] - heis[1], std::log2(double(L)) / 3.0, 0.15);
}

TEST(BlockEntropy, AnisotropyCurves) {
    auto ref = entropies(ground_state_scan({1.0, 0.0, 12}).state);
    for (double g : {-0.5, 0.0, 0.5}) {
        auto S = entropies(ground_state_scan({g, 0.0, 12}).state);
        for (int L = 1; L < 12; ++L) EXPECT_NEAR(S[L], ref[L], 0.1) << g << " " << L;
    }
    auto iso = entropies(ground_state_scan({1.0, 0.0, 10}).state);
    auto bent = entropies(ground_state_scan({2.5, 0.0, 10}).state);
    for (int L = 3; L <= 7; ++L) EXPECT_LT(bent[L], iso[L] - 0.05);
}

TEST(Validation, Bounds) {
    EXPECT_THROW(solve_bethe({1.0, 0.0, 7}, 2), DomainError);
    EXPECT_THROW(solve_bethe({1.0, 0.0, 20}, 2), DomainError);
    EXPECT_THROW(solve_bethe({1.0, 0.0, 8}, 0), DomainError);
    EXPECT_THROW(xxz_block_entropy(bethe_amplitudes(solve_bethe({1.0, 0.0, 8}, 2), {1.0, 0.0, 8}), 8), DomainError);
}
