#include "spinlab/lmg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "spinlab/entanglement.hpp"
#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

void validate(const LMGParams& p) {
    if (p.N < 2 || p.N > kLMGMaxN) throw DomainError("LMG size must be in [2, 5000]");
    if (!std::isfinite(p.gamma) || !std::isfinite(p.h)) throw DomainError("LMG parameters must be finite");
}

double diagonal_element(const LMGParams& p, int n) {
    const double S = p.N / 2.0;
    const double m = n - S;
    return (1.0 + p.gamma) / p.N * (m * m + p.N / 2.0 - S * (S + 1.0)) - 2.0 * p.h * m;
}

double coupling_element(const LMGParams& p, int n) {
    return (p.gamma - 1.0) / (2.0 * p.N) * ladder_squared_element(p.N, n - p.N / 2.0);
}

struct SectorGround {
    double energy;
    VectorR coeffs;  // full length N+1
};

SectorGround parity_sector(const LMGParams& p, int parity) {
    std::vector<double> diag, off;
    for (int n = parity; n <= p.N; n += 2) {
        diag.push_back(diagonal_element(p, n));
        if (n + 2 <= p.N) off.push_back(coupling_element(p, n));
    }
    auto eig = tridiagonal_lowest(diag, off, 1);
    SectorGround g{eig.values[0], VectorR::Zero(p.N + 1)};
    for (size_t i = 0; i < diag.size(); ++i) g.coeffs[parity + 2 * static_cast<int>(i)] = eig.vectors(i, 0);
    return g;
}

void fix_sign(VectorR& c) {
    Eigen::Index k;
    c.cwiseAbs().maxCoeff(&k);
    if (c[k] < 0) c = -c;
}

std::vector<double> log_factorials(int N) {
    std::vector<double> lf(N + 1, 0.0);
    for (int k = 1; k <= N; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    return lf;
}

double dense_entropy(const MatrixR& rho) {
    const VectorR w = symmetric_eigenvalues(rho);
    double S = 0.0;
    for (double v : w)
        if (v > 0.0) S -= v * std::log2(v);
    return std::max(S, 0.0);
}

}  // namespace

double ladder_squared_element(int N, double m) {
    const double S = N / 2.0;
    const double f = (S - m) * (S + m + 1.0) * (S - m - 1.0) * (S + m + 2.0);
    return f > 0.0 ? std::sqrt(f) : 0.0;
}

MatrixR lmg_hamiltonian_dicke(const LMGParams& p) {
    validate(p);
    MatrixR H = MatrixR::Zero(p.N + 1, p.N + 1);
    for (int n = 0; n <= p.N; ++n) {
        H(n, n) = diagonal_element(p, n);
        if (n + 2 <= p.N) H(n + 2, n) = H(n, n + 2) = coupling_element(p, n);
    }
    return H;
}

LMGGroundState lmg_ground(const LMGParams& p, ParityBranch branch) {
    validate(p);
    const int sym = p.N % 2;  // even number of down spins
    SectorGround a = parity_sector(p, sym);
    SectorGround b = parity_sector(p, 1 - sym);
    fix_sign(a.coeffs);
    fix_sign(b.coeffs);
    const double scale = std::max(1.0, std::abs(a.energy));
    LMGGroundState out;
    out.state.N = p.N;
    const bool doublet = std::abs(a.energy - b.energy) <= 1e-8 * scale;
    if (branch == ParityBranch::Broken && doublet) {
        out.state.coeffs = (a.coeffs + b.coeffs) / std::sqrt(2.0);
        out.energy = 0.5 * (a.energy + b.energy);
        out.doublet_splitting = b.energy - a.energy;
        return out;
    }
    if (b.energy < a.energy - 1e-9 * scale) std::swap(a, b);
    out.state.coeffs = a.coeffs;
    out.energy = a.energy;
    out.doublet_splitting = b.energy - a.energy;
    return out;
}

DickeVector lmg_ground_state(const LMGParams& p, ParityBranch branch) { return lmg_ground(p, branch).state; }

DickeVector dicke_basis_state(int N, int n) {
    if (n < 0 || n > N) throw DomainError("dicke_basis_state: n out of range");
    DickeVector v{N, VectorR::Zero(N + 1)};
    v.coeffs[n] = 1.0;
    return v;
}

MatrixR dicke_reduced_density(const DickeVector& v, int L) {
    const int N = v.N;
    if (L < 1 || L > N - 1) throw DomainError("dicke_reduced_density: need 1 <= L <= N-1");
    if (v.coeffs.size() != N + 1) throw DomainError("dicke_reduced_density: coefficient length mismatch");
    const auto lf = log_factorials(N);
    auto log_choose = [&](int a, int b) { return lf[a] - lf[b] - lf[a - b]; };
    const int E = N - L;
    // columns: environment up-spin count j; rows: block up-spin count l
    MatrixR V = MatrixR::Zero(L + 1, E + 1);
    for (int j = 0; j <= E; ++j)
        for (int l = 0; l <= L; ++l) {
            const int n = l + j;
            const double c = v.coeffs[n];
            if (c == 0.0) continue;
            V(l, j) = c * std::exp(0.5 * (log_choose(L, l) + log_choose(E, j) - log_choose(N, n)));
        }
    return V * V.transpose();
}

double dicke_block_entropy(const DickeVector& v, int L) { return dense_entropy(dicke_reduced_density(v, L)); }

double lmg_block_entropy(const LMGParams& p, int L, ParityBranch branch) {
    return dicke_block_entropy(lmg_ground_state(p, branch), L);
}

double gaussian_entropy_offset() { return 0.5 * std::log2(std::numbers::pi * std::numbers::e / 2.0); }

double isotropic_entropy_closed_form(int N, int L, double h, double offset) {
    if (N < 2 || L < 1 || L > N - 1) throw DomainError("isotropic_entropy_closed_form: need 1 <= L <= N-1");
    const double ah = std::abs(h);
    if (ah >= 1.0) return 0.0;
    const double size = static_cast<double>(L) * (N - L) / N;
    return 0.5 * std::log2(size) + 0.5 * std::log2(1.0 - ah * ah) + offset;
}

double calibrate_isotropic_offset(int N, int L, double h) {
    const double exact = lmg_block_entropy({1.0, h, N}, L);
    return exact - isotropic_entropy_closed_form(N, L, h, 0.0);
}

LMGFitSuite lmg_fit_suite(const LMGFitGrid& g) {
    LMGFitSuite out;
    std::vector<double> xs, ys;
    for (double h : g.field_h) {
        xs.push_back(std::log2(std::abs(1.0 - h)));
        ys.push_back(lmg_block_entropy({g.field_gamma, h, g.N}, g.field_L));
    }
    out.field_approach = linear_fit(xs, ys);

    xs.clear();
    ys.clear();
    const DickeVector critical = lmg_ground_state({g.size_gamma, 1.0, g.N});
    for (int L : g.size_L) {
        xs.push_back(std::log2(static_cast<double>(L) * (g.N - L) / g.N));
        ys.push_back(dicke_block_entropy(critical, L));
    }
    out.critical_size = linear_fit(xs, ys);

    xs.clear();
    ys.clear();
    for (double gm : g.anisotropy_gamma) {
        xs.push_back(std::log2(1.0 - gm));
        ys.push_back(lmg_block_entropy({gm, 1.0, g.N}, g.anisotropy_L));
    }
    out.anisotropy = linear_fit(xs, ys);
    return out;
}

LMGDenseResult lmg_dense_oracle(const LMGParams& p) {
    validate(p);
    if (p.N > 12) throw ResourceError("lmg_dense_oracle: N must be <= 12");
    const int N = p.N;
    const uint32_t full = 1u << N;
    auto sector = [&](int parity) {
        std::vector<int32_t> index(full, -1);
        std::vector<uint32_t> states;
        for (uint32_t s = 0; s < full; ++s)
            if ((std::popcount(s) & 1) == parity) {
                index[s] = static_cast<int32_t>(states.size());
                states.push_back(s);
            }
        const long dim = static_cast<long>(states.size());
        MatrixR H = MatrixR::Zero(dim, dim);
        for (long c = 0; c < dim; ++c) {
            const uint32_t s = states[c];
            H(c, c) = -p.h * (N - 2 * std::popcount(s));
            for (int i = 0; i < N; ++i)
                for (int j = i + 1; j < N; ++j) {
                    const uint32_t bi = 1u << i, bj = 1u << j;
                    const bool equal = ((s & bi) != 0) == ((s & bj) != 0);
                    H(index[s ^ bi ^ bj], c) += -(equal ? 1.0 - p.gamma : 1.0 + p.gamma) / N;
                }
        }
        auto eig = symmetric_lowest(H, 1);
        VectorR psi = VectorR::Zero(full);
        for (long c = 0; c < dim; ++c) psi[states[c]] = eig.vectors(c, 0);
        return std::pair{eig.values[0], psi};
    };
    auto even = sector(0);
    auto odd = sector(1);
    const double scale = std::max(1.0, std::abs(even.first));
    LMGDenseResult r;
    if (odd.first < even.first - 1e-9 * scale) {
        r.energy = odd.first;
        r.state = std::move(odd.second);
    } else {
        r.energy = even.first;
        r.state = std::move(even.second);
    }
    for (int L = 1; L < N; ++L) r.entropies.push_back(real_state_block_entropy(r.state, N, L));
    return r;
}

}  // namespace spinlab
