#include "spinlab/freefermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spinlab/entanglement.hpp"
#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-10;
constexpr double kQuadTol = 1e-10;

void require_finite_params(const XYParams& p) {
    if (!std::isfinite(p.gamma) || !std::isfinite(p.lambda)) throw DomainError("XY parameters must be finite");
}

void require_even_chain(int N) {
    if (N < 2 || N % 2 != 0) throw DomainError("finite chain length must be even and >= 2");
}

// Momenta of one sector; the unpaired modes (0, pi) of the periodic sector are flagged.
struct Mode {
    double phi;
    int forced_sign;  // 0 for ordinary modes
};

std::vector<Mode> sector_modes(int N, Sector s) {
    std::vector<Mode> modes;
    modes.reserve(N);
    for (int n = 0; n < N; ++n) {
        if (s == Sector::Antiperiodic) {
            modes.push_back({2.0 * kPi * (n + 0.5) / N, 0});
        } else {
            const double phi = 2.0 * kPi * n / N;
            int forced = 0;
            if (n == 0) forced = 1;
            else if (2 * n == N) forced = -1;
            modes.push_back({phi, forced});
        }
    }
    return modes;
}

std::vector<double> finite_kernel(const XYParams& p, int dmax, int N) {
    const Sector sec = ground_sector(p, N);
    const auto modes = sector_modes(N, sec);
    std::vector<double> g(2 * dmax + 1, 0.0);
    for (const Mode& m : modes) {
        double re, im;
        if (m.forced_sign != 0) {
            re = m.forced_sign;
            im = 0.0;
        } else {
            const double lam = dispersion(p, m.phi);
            if (lam < 1e-14) continue;  // exactly degenerate mode, left unpolarized
            re = (std::cos(m.phi) - p.lambda) / lam;
            im = -p.gamma * std::sin(m.phi) / lam;
        }
        for (int d = -dmax; d <= dmax; ++d) {
            const double c = std::cos(m.phi * d), s = std::sin(m.phi * d);
            g[d + dmax] += c * re - s * im;
        }
    }
    for (double& v : g) v /= N;
    return g;
}

// Fixed 61-point Kronrod panels between the cuts; the panel count doubles until the
// Kronrod-Gauss difference summed over panels meets kQuadTol.
double panel_integral(const std::function<double(double)>& f, const std::vector<double>& cuts, int oscillation) {
    using boost::math::quadrature::gauss_kronrod;
    const double width = 2.0 * kPi / (std::abs(oscillation) + 1.0);
    for (int refine = 1; refine <= 64; refine *= 2) {
        double total = 0.0, err_total = 0.0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            if (b <= a) continue;
            const int pieces = refine * std::max(1, static_cast<int>(std::ceil((b - a) / width)));
            const double h = (b - a) / pieces;
            for (int k = 0; k < pieces; ++k) {
                double err = 0.0;
                total += gauss_kronrod<double, 61>::integrate(f, a + k * h, a + (k + 1) * h, 0, 0.0, &err);
                err_total += err;
            }
        }
        if (err_total <= kQuadTol) return total;
    }
    throw NumericError("g_kernel: quadrature did not converge");
}

std::vector<double> thermodynamic_kernel(const XYParams& p, int dmax) {
    std::vector<double> cuts{0.0, kPi};
    const double g2 = p.gamma * p.gamma;
    if (std::abs(p.lambda) < 1.0 && g2 < 1.0 && std::abs(p.lambda) < 1.0 - g2)
        cuts.push_back(std::acos(p.lambda / (1.0 - g2)));
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> g(2 * dmax + 1, 0.0);
    for (int d = 0; d <= dmax; ++d) {
        auto even_part = [&](double phi) {
            const double lam = dispersion(p, phi);
            if (lam == 0.0) return 0.0;
            return std::cos(phi * d) * (std::cos(phi) - p.lambda) / lam;
        };
        auto odd_part = [&](double phi) {
            const double lam = dispersion(p, phi);
            if (lam == 0.0) return 0.0;
            return p.gamma * std::sin(phi * d) * std::sin(phi) / lam;
        };
        const double c = panel_integral(even_part, cuts, d) / kPi;
        const double s = (p.gamma == 0.0 || d == 0) ? 0.0 : panel_integral(odd_part, cuts, d) / kPi;
        g[dmax + d] = c + s;
        g[dmax - d] = c - s;
    }
    return g;
}

}  // namespace

std::string to_string(PhaseLabel l) {
    switch (l) {
        case PhaseLabel::CriticalXX: return "critical-XX";
        case PhaseLabel::CriticalXY: return "critical-XY";
        case PhaseLabel::Gapped1FP: return "gapped-1FP";
        case PhaseLabel::Gapped2FP: return "gapped-2FP";
    }
    return "unknown";
}

std::vector<double> BlockSpectrum::occupations() const {
    std::vector<double> n;
    n.reserve(nus.size());
    for (double v : nus) n.push_back(0.5 * (1.0 + v));
    return n;
}

double dispersion(const XYParams& p, double phi) {
    const double a = std::cos(phi) - p.lambda;
    const double b = p.gamma * std::sin(phi);
    return std::hypot(a, b);
}

double bogoliubov_angle(const XYParams& p, double phi) {
    const double lam = dispersion(p, phi);
    if (lam == 0.0) throw DomainError("bogoliubov_angle: gapless momentum");
    return std::acos(std::clamp((std::cos(phi) - p.lambda) / lam, -1.0, 1.0));
}

FermiData fermi_analysis(const XYParams& p) {
    require_finite_params(p);
    const double g = std::abs(p.gamma);
    const double l = std::abs(p.lambda);
    FermiData f;
    if (g == 0.0 && l < 1.0) {
        const double phi = std::acos(p.lambda);
        f.fermi_points = {-phi, phi};
        f.mass = 0.0;
        f.velocity = std::sqrt(1.0 - p.lambda * p.lambda);
        f.phase_label = PhaseLabel::CriticalXX;
        return f;
    }
    if (l + g * g >= 1.0) {
        f.fermi_points = {0.0};
        f.mass = std::abs(1.0 - l);
        f.velocity = l + g * g - 1.0;
        f.phase_label = f.mass == 0.0 ? PhaseLabel::CriticalXY : PhaseLabel::Gapped1FP;
        return f;
    }
    const double c = p.lambda / (1.0 - g * g);
    const double phi = std::acos(c);
    f.fermi_points = {-phi, phi};
    f.mass = g * g * (1.0 - l * l / (1.0 - g * g));
    f.velocity = 1.0 - g * g - l * l / (1.0 - g * g);
    f.phase_label = PhaseLabel::Gapped2FP;
    return f;
}

double sector_energy(const XYParams& p, int N, Sector s) {
    require_even_chain(N);
    double e = 0.0;
    for (const Mode& m : sector_modes(N, s)) {
        if (m.forced_sign != 0) continue;
        e -= 0.5 * dispersion(p, m.phi);
    }
    if (s == Sector::Periodic) e -= 1.0;
    return e;
}

Sector ground_sector(const XYParams& p, int N) {
    const double ea = sector_energy(p, N, Sector::Antiperiodic);
    const double ep = sector_energy(p, N, Sector::Periodic);
    return ep < ea - kTieTol ? Sector::Periodic : Sector::Antiperiodic;
}

std::vector<double> g_kernel_range(const XYParams& p, int dmax, ChainSize size) {
    require_finite_params(p);
    if (dmax < 0) throw DomainError("g_kernel_range: negative separation bound");
    if (size.is_infinite()) return thermodynamic_kernel(p, dmax);
    require_even_chain(size.N);
    return finite_kernel(p, dmax, size.N);
}

double g_kernel(const XYParams& p, int d, ChainSize size) {
    const int a = std::abs(d);
    const auto g = g_kernel_range(p, a, size);
    return g[d + a];
}

namespace {

CorrelationKernel kernel_from_range(const std::vector<double>& g, int dmax, int L) {
    CorrelationKernel k;
    k.L = L;
    k.entries.resize(L, L);
    for (int n = 0; n < L; ++n)
        for (int m = 0; m < L; ++m) k.entries(n, m) = g[n - m + dmax];
    return k;
}

}  // namespace

CorrelationKernel block_correlation(const XYParams& p, int L, ChainSize size) {
    if (L < 1) throw DomainError("block_correlation: L must be positive");
    if (!size.is_infinite() && L > size.N) throw DomainError("block_correlation: block longer than chain");
    return kernel_from_range(g_kernel_range(p, L - 1, size), L - 1, L);
}

BlockSpectrum mode_spectrum(const CorrelationKernel& k) {
    const VectorR sv = singular_values(k.entries);
    BlockSpectrum s;
    for (double v : sv) {
        if (v > 1.0 + 1e-6) throw NumericError("mode_spectrum: singular value exceeds one");
        s.nus.push_back(std::clamp(v, 0.0, 1.0));
    }
    return s;
}

double spectrum_entropy(const BlockSpectrum& s) {
    double S = 0.0;
    for (double nu : s.nus) S += binary_entropy(0.5 * (1.0 + nu));
    return S;
}

double block_entropy(const XYParams& p, int L, ChainSize size) {
    return spectrum_entropy(mode_spectrum(block_correlation(p, L, size)));
}

std::vector<double> block_entropies(const XYParams& p, std::span<const int> Ls, ChainSize size) {
    if (Ls.empty()) return {};
    const int Lmax = *std::max_element(Ls.begin(), Ls.end());
    if (*std::min_element(Ls.begin(), Ls.end()) < 1) throw DomainError("block_entropies: L must be positive");
    if (!size.is_infinite() && Lmax > size.N) throw DomainError("block_entropies: block longer than chain");
    const auto g = g_kernel_range(p, Lmax - 1, size);
    std::vector<double> out;
    out.reserve(Ls.size());
    for (int L : Ls) {
        CorrelationKernel k;
        k.L = L;
        k.entries.resize(L, L);
        for (int n = 0; n < L; ++n)
            for (int m = 0; m < L; ++m) k.entries(n, m) = g[n - m + Lmax - 1];
        out.push_back(spectrum_entropy(mode_spectrum(k)));
    }
    return out;
}

FitResult entropy_scaling_fit(const XYParams& p, std::span<const int> Ls, ChainSize size) {
    if (Ls.size() < 4) throw DomainError("entropy_scaling_fit: need at least four block sizes");
    const auto S = block_entropies(p, Ls, size);
    std::vector<double> xs;
    for (int L : Ls) xs.push_back(std::log2(static_cast<double>(L)));
    return linear_fit(xs, S);
}

double saturation_entropy_for_mass(double mass) {
    if (!(mass > 0.0)) throw DomainError("saturation_entropy: mass must be positive");
    return std::log2(1.0 / mass) / 6.0;
}

double saturation_entropy(const XYParams& p) { return saturation_entropy_for_mass(fermi_analysis(p).mass); }

double central_charge_from_slope(double slope) {
    if (slope < 0.0) throw DomainError("central_charge_from_slope: negative slope");
    return 3.0 * slope;
}

namespace {

// Lowest eigenpair of the spin hamiltonian restricted to states with the given down-spin parity
// (parity < 0 means the whole space).
std::pair<double, VectorR> dense_sector(const XYParams& p, int N, double eps, int parity) {
    const uint32_t full = 1u << N;
    std::vector<int32_t> index(full, -1);
    std::vector<uint32_t> states;
    for (uint32_t s = 0; s < full; ++s) {
        if (parity >= 0 && (std::popcount(s) & 1) != parity) continue;
        index[s] = static_cast<int32_t>(states.size());
        states.push_back(s);
    }
    const long dim = static_cast<long>(states.size());
    if (dim > kDenseMaxDim) throw ResourceError("dense_oracle: sector dimension exceeds limit");
    MatrixR H = MatrixR::Zero(dim, dim);
    for (long c = 0; c < dim; ++c) {
        const uint32_t s = states[c];
        const int down = std::popcount(s);
        H(c, c) += -0.5 * p.lambda * (N - 2 * down);
        for (int j = 0; j < N; ++j) {
            const int k = (j + 1) % N;
            const uint32_t bj = 1u << (N - 1 - j), bk = 1u << (N - 1 - k);
            const bool equal = ((s & bj) != 0) == ((s & bk) != 0);
            const uint32_t t = s ^ bj ^ bk;
            H(index[t], c) += equal ? 0.5 * p.gamma : 0.5;
            if (eps != 0.0) H(index[s ^ bj], c) += (j % 2 == 0) ? -eps : eps;
        }
    }
    auto eig = symmetric_lowest(H, 1);
    VectorR psi = VectorR::Zero(full);
    for (long c = 0; c < dim; ++c) psi[states[c]] = eig.vectors(c, 0);
    return {eig.values[0], psi};
}

}  // namespace

DenseOracleResult dense_oracle(const XYParams& p, int N, double breaking_field) {
    require_finite_params(p);
    if (N < 2 || N > 14) throw ResourceError("dense_oracle: N must be in [2,14]");
    if (breaking_field != 0.0 && N % 2 != 0) throw DomainError("dense_oracle: staggered field needs even N");
    DenseOracleResult r;
    if (breaking_field != 0.0) {
        auto [e, psi] = dense_sector(p, N, breaking_field, -1);
        r.energy = e;
        r.state = std::move(psi);
        r.parity = 0;
        r.even_energy = r.odd_energy = e;
    } else {
        auto even = dense_sector(p, N, 0.0, 0);
        auto odd = dense_sector(p, N, 0.0, 1);
        r.even_energy = even.first;
        r.odd_energy = odd.first;
        if (odd.first < even.first - kTieTol) {
            r.energy = odd.first;
            r.state = std::move(odd.second);
            r.parity = -1;
        } else {
            r.energy = even.first;
            r.state = std::move(even.second);
            r.parity = 1;
        }
    }
    for (int L = 1; L < N; ++L) r.entropies.push_back(real_state_block_entropy(r.state, N, L));
    return r;
}

}  // namespace spinlab
