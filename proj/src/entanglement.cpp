#include "spinlab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

void require_normalized(std::span<const double> p) {
    double total = 0.0;
    for (double v : p) {
        if (v < -kProbTol) throw ContractError("probability vector has negative entries");
        total += v;
    }
    if (std::abs(total - 1.0) > kProbTol) throw ContractError("probability vector is not normalized");
}

std::vector<double> sorted_desc(std::span<const double> p, size_t len) {
    std::vector<double> out(p.begin(), p.end());
    out.resize(len, 0.0);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace

SchmidtDecomposition schmidt(std::span<const cplx> state, long dimA, long dimB) {
    if (dimA <= 0 || dimB <= 0 || static_cast<long>(state.size()) != dimA * dimB)
        throw DomainError("schmidt: dimension mismatch");
    double norm2 = 0.0;
    for (const cplx& c : state) norm2 += std::norm(c);
    if (std::abs(norm2 - 1.0) > 1e-10) throw ContractError("schmidt: state not normalized");
    // row index = subsystem A (most significant), column = B
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(state.data(), dimA,
                                                                                           dimB);
    MatrixC mat = m;
    VectorR sv = Eigen::BDCSVD<MatrixC>(mat).singularValues();
    SchmidtDecomposition out;
    out.coefficients.assign(sv.data(), sv.data() + sv.size());
    out.rank = static_cast<int>(std::count_if(out.coefficients.begin(), out.coefficients.end(),
                                              [](double mu) { return mu > kSchmidtCutoff; }));
    return out;
}

SchmidtDecomposition schmidt(const VectorC& state, long dimA, long dimB) {
    return schmidt(std::span<const cplx>(state.data(), static_cast<size_t>(state.size())), dimA, dimB);
}

double entanglement_entropy(const SchmidtDecomposition& s) {
    double S = 0.0;
    for (double mu : s.coefficients) {
        if (mu <= kSchmidtCutoff) continue;
        const double p = mu * mu;
        S -= p * std::log2(p);
    }
    return std::max(S, 0.0);
}

double real_state_block_entropy(const VectorR& state, int N, int L) {
    if (L <= 0 || L >= N) return 0.0;
    const long rows = 1L << L, cols = 1L << (N - L);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(state.data(), rows,
                                                                                             cols);
    const VectorR sv = singular_values(m);
    double S = 0.0;
    for (double mu : sv) {
        if (mu <= kSchmidtCutoff) continue;
        const double q = mu * mu;
        S -= q * std::log2(q);
    }
    return std::max(S, 0.0);
}

double shannon_entropy(std::span<const double> p) {
    double S = 0.0;
    for (double v : p)
        if (v > 0.0) S -= v * std::log2(v);
    return std::max(S, 0.0);
}

bool majorizes(std::span<const double> x, std::span<const double> y) {
    require_normalized(x);
    require_normalized(y);
    const size_t n = std::max(x.size(), y.size());
    const auto xs = sorted_desc(x, n);
    const auto ys = sorted_desc(y, n);
    double sx = 0.0, sy = 0.0;
    for (size_t k = 0; k < n; ++k) {
        sx += xs[k];
        sy += ys[k];
        if (sx > sy + 1e-12) return false;
    }
    return std::abs(sx - sy) <= kProbTol;
}

ProbVector mode_probs(double omega) {
    if (omega < 0.0) throw DomainError("mode_probs: negative mode energy");
    const double b = std::exp(-omega);
    return {1.0 / (1.0 + b), b / (1.0 + b)};
}

StochasticWeights doubly_stochastic_weights(double omega, double omega_tilde) {
    if (omega_tilde <= 0.0) throw DomainError("doubly_stochastic_weights: omega_tilde must be positive");
    const double b = std::exp(-omega);
    const double bt = std::exp(-omega_tilde);
    const double pref = (1.0 + bt) / (1.0 + b);
    const double den = 1.0 - bt * bt;
    StochasticWeights w;
    w.p0 = pref * (1.0 - bt * b) / den;
    w.p1 = pref * (b - bt) / den;
    const double tol = 1e-10;
    w.valid = w.p0 >= -tol && w.p0 <= 1.0 + tol && w.p1 >= -tol && w.p1 <= 1.0 + tol &&
              std::abs(w.p0 + w.p1 - 1.0) <= tol;
    return w;
}

double reconstruction_error(const StochasticWeights& w, double omega, double omega_tilde) {
    const auto pt = mode_probs(omega_tilde);
    const auto target = mode_probs(omega);
    const double a = w.p0 * pt[0] + w.p1 * pt[1];
    const double b = w.p0 * pt[1] + w.p1 * pt[0];
    return std::max(std::abs(a - target[0]), std::abs(b - target[1]));
}

FlowCheck infinitesimal_flow_check(const ModeDispersion& disp, double tau, double dtau, int modes) {
    FlowCheck out;
    const double h = std::abs(dtau) / 10.0;
    for (int j = 0; j < modes; ++j) {
        const double w = disp(j, tau);
        if (w <= 0.0) {
            out.excluded.push_back(j);
            continue;
        }
        const double deriv = (disp(j, tau + h) - disp(j, tau - h)) / (2.0 * h);
        const double q = deriv * dtau / (std::exp(w) - std::exp(-w));
        out.quantities.push_back(q);
        if (!(q >= 0.0 && q <= 1.0)) out.holds = false;
    }
    return out;
}

double ising_mode_dispersion(double lambda, int j) {
    if (!(lambda > 0.0)) throw DomainError("ising_mode_dispersion: lambda must be positive");
    if (lambda == 1.0) throw DomainError("ising_mode_dispersion: critical point");
    if (j < 0) throw DomainError("ising_mode_dispersion: negative mode index");
    if (lambda > 1.0) {
        const double k = 1.0 / lambda;
        return (2 * j + 1) * M_PI * elliptic_K(std::sqrt((1.0 - k) * (1.0 + k))) / elliptic_K(k);
    }
    if (j == 0) return 0.0;
    return 2 * j * M_PI * elliptic_K(std::sqrt((1.0 - lambda) * (1.0 + lambda))) / elliptic_K(lambda);
}

ModeDispersion ising_flow_dispersion(bool above_critical) {
    if (above_critical) return [](int j, double tau) { return ising_mode_dispersion(1.0 + tau, j); };
    return [](int j, double tau) { return ising_mode_dispersion(1.0 - tau, j); };
}

ProbVector truncated_spectrum(double lambda, int modes) {
    if (modes < 1 || modes > 16) throw DomainError("truncated_spectrum: mode count must be in [1,16]");
    ProbVector out{1.0};
    for (int j = 0; j < modes; ++j) {
        const auto p = mode_probs(ising_mode_dispersion(lambda, j));
        ProbVector next;
        next.reserve(out.size() * 2);
        for (double v : out) {
            next.push_back(v * p[0]);
            next.push_back(v * p[1]);
        }
        out = std::move(next);
    }
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    for (double& v : out) v /= total;
    return out;
}

FlowAudit flow_majorization_audit(std::span<const double> lambda_path, int modes) {
    FlowAudit audit;
    if (lambda_path.size() < 2) return audit;
    const bool above = lambda_path.front() > 1.0;
    for (double l : lambda_path)
        if (l == 1.0 || (l > 1.0) != above || l <= 0.0)
            throw DomainError("flow_majorization_audit: path must stay on one side of lambda=1");
    const bool increasing = lambda_path[1] > lambda_path[0];
    for (size_t k = 1; k < lambda_path.size(); ++k)
        if ((lambda_path[k] > lambda_path[k - 1]) != increasing || lambda_path[k] == lambda_path[k - 1])
            throw DomainError("flow_majorization_audit: path must be strictly monotone");

    auto probs = truncated_spectrum(lambda_path[0], modes);
    for (size_t k = 1; k < lambda_path.size(); ++k) {
        auto next = truncated_spectrum(lambda_path[k], modes);
        FlowStep s;
        s.lambda_from = lambda_path[k - 1];
        s.lambda_to = lambda_path[k];
        s.majorized = majorizes(probs, next);
        s.strict = s.majorized && !majorizes(next, probs);
        s.entropy_from = shannon_entropy(probs);
        s.entropy_to = shannon_entropy(next);
        for (int j = 0; j < modes; ++j) {
            const double w = ising_mode_dispersion(s.lambda_from, j);
            const double wt = ising_mode_dispersion(s.lambda_to, j);
            if (wt <= 0.0) continue;
            auto sw = doubly_stochastic_weights(w, wt);
            if (sw.valid) s.max_reconstruction_error = std::max(s.max_reconstruction_error, reconstruction_error(sw, w, wt));
            s.weights.push_back(sw);
        }
        const bool weights_ok = std::all_of(s.weights.begin(), s.weights.end(), [](auto& w) { return w.valid; });
        if (!s.majorized || s.entropy_to > s.entropy_from + 1e-12 || !weights_ok)
            audit.violations.push_back(static_cast<int>(k - 1));
        audit.steps.push_back(std::move(s));
        probs = std::move(next);
    }
    return audit;
}

Rational make_rational(long long num, long long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    return {num / (g ? g : 1), den / (g ? g : 1)};
}

Rational kac_central_charge(int m) {
    if (m < 3) throw DomainError("kac_central_charge: m must be at least 3");
    const long long mm = static_cast<long long>(m) * (m + 1);
    return make_rational(mm - 6, mm);
}

Rational kac_weight(int m, int p, int q) {
    if (m < 3 || q < 1 || q > p || p > m - 1) throw DomainError("kac_weight: need 1 <= q <= p <= m-1");
    const long long a = static_cast<long long>(m + 1) * p - static_cast<long long>(m) * q;
    return make_rational(a * a - 1, 4LL * m * (m + 1));
}

}  // namespace spinlab
