#include "spinlab/mpsrg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

constexpr cplx kI{0.0, 1.0};

MatrixC pauli(int k) {
    MatrixC s = MatrixC::Zero(2, 2);
    switch (k) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -kI, kI, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

MatrixC kron(const MatrixC& x, const MatrixC& y) {
    MatrixC out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

MatrixC matrix_power(MatrixC base, long n) {
    MatrixC out = MatrixC::Identity(base.rows(), base.cols());
    while (n > 0) {
        if (n & 1) out = out * base;
        base = base * base;
        n >>= 1;
    }
    return out;
}

MatrixC psd_sqrt(const MatrixC& h) {
    Eigen::SelfAdjointEigenSolver<MatrixC> es(0.5 * (h + h.adjoint()));
    VectorR w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Dominant left/right fixed points of the transfer map, normalized so tr(left*right) = 1.
struct Environment {
    cplx lambda;
    VectorC left;   // u with u^T E = lambda u^T
    VectorC right;  // E v = lambda v
    MatrixC left_matrix;
    MatrixC right_matrix;
};

Environment environment(const UniformMPS& m) {
    const TransferMatrix t = transfer_matrix(m);
    const double top = std::abs(t.eigenvalues[0]);
    if (!(top > 0.0)) throw ClusteringError("transfer matrix is nilpotent");
    int unit = 0;
    for (Eigen::Index i = 0; i < t.eigenvalues.size(); ++i)
        if (std::abs(t.eigenvalues[i]) >= top * (1.0 - 1e-9)) ++unit;
    if (unit > 1) throw ClusteringError("dominant transfer eigenvalue is not unique");

    auto dominant = [&](const MatrixC& e) {
        Eigen::ComplexEigenSolver<MatrixC> es(e, true);
        Eigen::Index k = 0;
        es.eigenvalues().cwiseAbs().maxCoeff(&k);
        return std::pair<cplx, VectorC>{es.eigenvalues()[k], es.eigenvectors().col(k)};
    };
    auto [lam, v] = dominant(t.e);
    auto [lam_l, u] = dominant(t.e.transpose());
    (void)lam_l;
    const int D = m.D;
    Environment env;
    env.lambda = lam;
    MatrixC L(D, D), R(D, D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            L(a, b) = u[a * D + b];
            R(b, a) = v[a * D + b];
        }
    auto fix_phase = [](MatrixC& x, VectorC& vec) {
        const cplx tr = x.trace();
        const cplx ph = std::abs(tr) > 0 ? tr / std::abs(tr) : cplx(1.0);
        x /= ph;
        vec /= ph;
        x = 0.5 * (x + x.adjoint());
    };
    fix_phase(L, u);
    fix_phase(R, v);
    const cplx norm = (L * R).trace();
    L /= norm;
    u /= norm;
    env.left = u;
    env.right = v;
    env.left_matrix = L;
    env.right_matrix = R;
    return env;
}

bool approx_zero(const MatrixC& x, double tol) { return x.cwiseAbs().maxCoeff() <= tol; }

// c with x = c*y, or nullopt.
std::optional<cplx> proportional(const MatrixC& x, const MatrixC& y, double tol) {
    const double yy = y.squaredNorm();
    if (yy <= tol * tol) return std::nullopt;
    const cplx c = (y.adjoint() * x).trace() / yy;
    if (!approx_zero(x - c * y, tol)) return std::nullopt;
    return c;
}

bool unit_phase(cplx c, double tol) { return std::abs(std::abs(c) - 1.0) <= tol; }

std::optional<FixedPointLabel> match_w(const std::vector<MatrixC>& t, double tol) {
    if (t.size() != 2) return std::nullopt;
    for (int k = 0; k < 2; ++k) {
        const MatrixC& x = t[k];
        const MatrixC& y = t[1 - k];
        if (!approx_zero(y * y, tol)) continue;
        auto c = proportional(x * y, y, tol);
        if (!c || !unit_phase(*c, tol)) continue;
        FixedPointLabel f;
        f.kind = FixedPointKind::WType;
        f.theta = -std::arg(*c);
        return f;
    }
    return std::nullopt;
}

std::optional<FixedPointLabel> match_domain_wall(const std::vector<MatrixC>& t, double tol) {
    if (t.size() != 2 && t.size() != 3) return std::nullopt;
    std::vector<int> idx(t.size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
        const MatrixC& a0 = t[idx[0]];
        const MatrixC& a2 = t[idx[1]];
        const MatrixC* a1 = t.size() == 3 ? &t[idx[2]] : nullptr;
        auto c0 = proportional(a0 * a0, a0, tol);
        auto c2 = proportional(a2 * a2, a2, tol);
        if (!c0 || !c2 || !unit_phase(*c0, tol) || std::abs(*c2 - std::conj(*c0)) > tol) continue;
        if (!approx_zero(a2 * a0, tol)) continue;
        if (a1) {
            const MatrixC& b = *a1;
            auto l = proportional(a0 * b, b, tol);
            auto r = proportional(b * a2, b, tol);
            if (!l || !r || std::abs(*l - *c0) > tol || std::abs(*r - *c2) > tol) continue;
            if (!approx_zero(b * a0, tol) || !approx_zero(a2 * b, tol) || !approx_zero(b * b, tol)) continue;
            if (!approx_zero(a0 * a2, tol) && !proportional(a0 * a2, b, tol)) continue;
        }
        FixedPointLabel f;
        f.kind = FixedPointKind::DomainWall;
        f.theta = std::arg(*c0);
        const double s_alpha = a1 ? std::min(1.0, a1->norm()) : 0.0;
        f.alpha = std::asin(s_alpha);
        f.beta = std::atan2(std::sqrt(std::max(0.0, a0.squaredNorm() - 1.0)),
                            std::sqrt(std::max(0.0, a2.squaredNorm() - 1.0)));
        return f;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return std::nullopt;
}

}  // namespace

bool UniformMPS::is_canonical(double tol) const {
    MatrixC s = MatrixC::Zero(D, D);
    for (const auto& a : tensors) s += a.adjoint() * a;
    return approx_zero(s - MatrixC::Identity(D, D), tol);
}

UniformMPS make_mps(std::vector<MatrixC> tensors) {
    if (tensors.empty()) throw DomainError("make_mps: no tensors");
    UniformMPS m;
    m.D = static_cast<int>(tensors[0].rows());
    for (const auto& a : tensors) {
        if (a.rows() != m.D || a.cols() != m.D) throw DomainError("make_mps: tensors must be square and equal size");
        if (!a.allFinite()) throw DomainError("make_mps: non-finite entries");
    }
    m.d = static_cast<int>(tensors.size());
    m.tensors = std::move(tensors);
    m.boundary = MatrixC::Identity(m.D, m.D);
    return m;
}

std::vector<SiteTensor> mps_from_state(const VectorC& state, int N, int d) {
    if (N < 1 || d < 1) throw DomainError("mps_from_state: invalid sizes");
    long total = 1;
    for (int i = 0; i < N; ++i) total *= d;
    if (state.size() != total) throw DomainError("mps_from_state: length is not d^N");
    if (std::abs(state.norm() - 1.0) > 1e-10) throw ContractError("mps_from_state: state not normalized");

    std::vector<SiteTensor> sites;
    VectorC rest = state;
    long Dl = 1;
    long remaining = total;
    for (int k = 0; k < N - 1; ++k) {
        remaining /= d;
        Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(rest.data(), Dl * d,
                                                                                               remaining);
        Eigen::BDCSVD<MatrixC> s(MatrixC(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
        const VectorR sv = s.singularValues();
        long keep = 0;
        while (keep < sv.size() && sv[keep] > 1e-12) ++keep;
        keep = std::max<long>(keep, 1);
        SiteTensor site(d, MatrixC::Zero(Dl, keep));
        for (long a = 0; a < Dl; ++a)
            for (int q = 0; q < d; ++q)
                for (long b = 0; b < keep; ++b) site[q](a, b) = s.matrixU()(a * d + q, b);
        sites.push_back(std::move(site));
        MatrixC next = sv.head(keep).asDiagonal() * s.matrixV().leftCols(keep).adjoint();
        rest.resize(keep * remaining);
        for (long b = 0; b < keep; ++b)
            for (long c = 0; c < remaining; ++c) rest[b * remaining + c] = next(b, c);
        Dl = keep;
    }
    SiteTensor last(d, MatrixC::Zero(Dl, 1));
    for (long a = 0; a < Dl; ++a)
        for (int q = 0; q < d; ++q) last[q](a, 0) = rest[a * d + q];
    sites.push_back(std::move(last));
    return sites;
}

VectorC contract_open_mps(const std::vector<SiteTensor>& sites) {
    if (sites.empty()) throw DomainError("contract_open_mps: empty chain");
    std::vector<MatrixC> partial{MatrixC::Identity(1, 1)};
    for (const SiteTensor& site : sites) {
        std::vector<MatrixC> next;
        next.reserve(partial.size() * site.size());
        for (const MatrixC& p : partial)
            for (const MatrixC& a : site) next.push_back(p * a);
        partial = std::move(next);
    }
    VectorC out(static_cast<Eigen::Index>(partial.size()));
    for (size_t i = 0; i < partial.size(); ++i) out[static_cast<Eigen::Index>(i)] = partial[i](0, 0);
    return out;
}

bool canonical_check(const UniformMPS& m) { return m.is_canonical(1e-10); }

TransferMatrix transfer_matrix(const UniformMPS& m) {
    TransferMatrix t;
    const int D = m.D;
    t.e = MatrixC::Zero(D * D, D * D);
    for (const auto& a : m.tensors) t.e += kron(a.conjugate(), a);
    Eigen::ComplexEigenSolver<MatrixC> es(t.e, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::stable_sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12) return ma > mb;
        if (std::abs(a.real() - b.real()) > 1e-12) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    t.eigenvalues = Eigen::Map<VectorC>(ev.data(), static_cast<Eigen::Index>(ev.size()));
    return t;
}

double mps_norm(const UniformMPS& m, int N) {
    if (N < 1) throw DomainError("mps_norm: N must be positive");
    const MatrixC bt = kron(m.boundary.conjugate(), m.boundary);
    const cplx v = (bt * matrix_power(transfer_matrix(m).e, N)).trace();
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw NumericError("mps_norm: norm has an imaginary part");
    return v.real();
}

MatrixC insertion_matrix(const UniformMPS& m, const MatrixC& op) {
    if (op.rows() != m.d || op.cols() != m.d) throw DomainError("operator dimension does not match d");
    MatrixC out = MatrixC::Zero(m.D * m.D, m.D * m.D);
    for (int s = 0; s < m.d; ++s)
        for (int t = 0; t < m.d; ++t)
            if (op(s, t) != cplx(0.0)) out += op(s, t) * kron(m.tensors[s].conjugate(), m.tensors[t]);
    return out;
}

cplx two_point(const UniformMPS& m, const MatrixC& O1, const MatrixC& O2, int r, std::optional<int> N) {
    if (r < 1) throw DomainError("two_point: separation must be >= 1");
    const MatrixC o1 = insertion_matrix(m, O1);
    const MatrixC o2 = insertion_matrix(m, O2);
    const MatrixC e = transfer_matrix(m).e;
    if (N) {
        if (*N < r + 1) throw DomainError("two_point: chain shorter than separation");
        const MatrixC bt = kron(m.boundary.conjugate(), m.boundary);
        return (bt * o1 * matrix_power(e, r - 1) * o2 * matrix_power(e, *N - r - 1)).trace();
    }
    const Environment env = environment(m);
    VectorC w = o2 * env.right;
    for (int k = 0; k < r - 1; ++k) w = e * w;
    const cplx num = env.left.transpose() * (o1 * w);
    const cplx den = env.left.transpose() * env.right;
    return num / (den * std::pow(env.lambda, r + 1));
}

cplx one_point(const UniformMPS& m, const MatrixC& O) {
    const Environment env = environment(m);
    const cplx num = env.left.transpose() * (insertion_matrix(m, O) * env.right);
    const cplx den = env.left.transpose() * env.right;
    return num / (den * env.lambda);
}

cplx connected_two_point(const UniformMPS& m, const MatrixC& O1, const MatrixC& O2, int r) {
    return two_point(m, O1, O2, r) - one_point(m, O1) * one_point(m, O2);
}

std::vector<double> correlation_lengths(const TransferMatrix& t) {
    std::vector<double> out;
    if (t.eigenvalues.size() == 0) return out;
    const double top = std::abs(t.eigenvalues[0]);
    for (Eigen::Index i = 1; i < t.eigenvalues.size(); ++i) {
        const double ratio = top > 0.0 ? std::abs(t.eigenvalues[i]) / top : 0.0;
        if (ratio >= 1.0 - 1e-12) out.push_back(kInfiniteLength);
        else if (ratio < 1e-14) out.push_back(0.0);
        else out.push_back(-1.0 / std::log(ratio));
    }
    return out;
}

UniformMPS rg_step(const UniformMPS& m) {
    const int d = m.d, D = m.D;
    MatrixC W(d * d, D * D);
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t) {
            const MatrixC p = m.tensors[s] * m.tensors[t];
            for (int a = 0; a < D; ++a)
                for (int c = 0; c < D; ++c) W(s * d + t, a * D + c) = p(a, c);
        }
    Eigen::BDCSVD<MatrixC> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericError("rg_step: SVD failed");
    const VectorR sv = svd.singularValues();
    std::vector<MatrixC> out;
    for (Eigen::Index j = 0; j < sv.size(); ++j) {
        if (sv[j] < 1e-12) continue;
        MatrixC a(D, D);
        for (int x = 0; x < D; ++x)
            for (int y = 0; y < D; ++y) a(x, y) = sv[j] * std::conj(svd.matrixV()(x * D + y, j));
        out.push_back(std::move(a));
    }
    if (out.empty()) out.push_back(MatrixC::Zero(D, D));
    UniformMPS r = make_mps(std::move(out));
    r.boundary = m.boundary;
    return r;
}

UniformMPS aklt_family(double mu) {
    const double top = 1.0 / std::sqrt(3.0);
    if (mu < 0.0 || mu > top + 1e-12) throw DomainError("aklt_family: mu must lie in [0, 1/sqrt(3)]");
    mu = std::min(mu, top);
    std::vector<MatrixC> t;
    t.push_back(std::sqrt(std::max(0.0, 1.0 - 3.0 * mu * mu)) * pauli(0));
    for (int k = 1; k <= 3; ++k) t.push_back(kI * mu * pauli(k));
    return make_mps(std::move(t));
}

UniformMPS aklt_mps() {
    std::vector<MatrixC> t;
    for (int k = 1; k <= 3; ++k) t.push_back(pauli(k) / std::sqrt(3.0));
    return make_mps(std::move(t));
}

double aklt_flow_entropy(int L, double mu) {
    if (L < 0) throw DomainError("aklt_flow_entropy: L must be >= 0");
    if (mu < 0.0 || mu > 1.0 / std::sqrt(3.0) + 1e-12) throw DomainError("aklt_flow_entropy: mu out of range");
    const double x = std::pow(1.0 - 4.0 * mu * mu, std::ldexp(1.0, L));
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term((1.0 + 3.0 * x) / 4.0) + 3.0 * term((1.0 - x) / 4.0);
}

MatrixC block_density(const UniformMPS& m, int n) {
    if (n < 1) throw DomainError("block_density: n must be positive");
    long configs = 1;
    for (int i = 0; i < n; ++i) {
        configs *= m.d;
        if (configs > 4096) throw ResourceError("block_density: too many configurations");
    }
    const Environment env = environment(m);
    std::vector<MatrixC> prod{MatrixC::Identity(m.D, m.D)};
    for (int i = 0; i < n; ++i) {
        std::vector<MatrixC> next;
        next.reserve(prod.size() * m.d);
        for (const auto& p : prod)
            for (const auto& a : m.tensors) next.push_back(p * a);
        prod = std::move(next);
    }
    const double scale = std::pow(std::abs(env.lambda), n);
    std::vector<MatrixC> left(prod.size()), right(prod.size());
    for (size_t s = 0; s < prod.size(); ++s) {
        left[s] = env.left_matrix * prod[s] * env.right_matrix;
    }
    MatrixC rho(configs, configs);
    for (long s = 0; s < configs; ++s)
        for (long t = 0; t < configs; ++t) rho(s, t) = (left[s] * prod[t].adjoint()).trace() / scale;
    return 0.5 * (rho + rho.adjoint());
}

double mps_block_entropy(const UniformMPS& m, int n) {
    if (n < 1) throw DomainError("mps_block_entropy: n must be positive");
    const Environment env = environment(m);
    const int D = m.D;
    const MatrixC en = matrix_power(transfer_matrix(m).e / std::abs(env.lambda), n);
    MatrixC G(D * D, D * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            for (int a2 = 0; a2 < D; ++a2)
                for (int b2 = 0; b2 < D; ++b2) G(a * D + b, a2 * D + b2) = en(a2 * D + a, b2 * D + b);
    const MatrixC K = kron(psd_sqrt(env.left_matrix), psd_sqrt(env.right_matrix).transpose());
    MatrixC rho = K * G * K.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    const VectorR w = Eigen::SelfAdjointEigenSolver<MatrixC>(rho, Eigen::EigenvaluesOnly).eigenvalues();
    double S = 0.0;
    for (double p : w)
        if (p > 1e-300) S -= p * std::log2(p);
    return std::max(S, 0.0);
}

std::string to_string(FixedPointKind k) {
    switch (k) {
        case FixedPointKind::Product: return "product";
        case FixedPointKind::Ghz: return "ghz";
        case FixedPointKind::ClusterValence: return "cluster_valence";
        case FixedPointKind::WType: return "w_type";
        case FixedPointKind::DomainWall: return "domain_wall";
        case FixedPointKind::SymmetricD2: return "symmetric_D2";
        case FixedPointKind::None: return "none";
    }
    return "none";
}

JordanInfo jordan_structure(const MatrixC& e, double tol) {
    JordanInfo info;
    const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
    info.idempotent = approx_zero(e * e - e, tol * scale);
    const VectorR sv = Eigen::BDCSVD<MatrixC>(e).singularValues();
    for (double s : sv)
        if (s > tol * scale) ++info.rank;
    const VectorC ev = Eigen::ComplexEigenSolver<MatrixC>(e, false).eigenvalues();
    const Eigen::Index n = ev.size();
    std::vector<bool> used(n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (used[i]) continue;
        int mult = 0;
        cplx centre = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!used[j] && std::abs(ev[j] - ev[i]) < 1e-5 * scale) {
                used[j] = true;
                centre += ev[j];
                ++mult;
            }
        if (mult < 2) continue;
        centre /= static_cast<double>(mult);
        const MatrixC shifted = e - centre * MatrixC::Identity(n, n);
        const VectorR ssv = Eigen::BDCSVD<MatrixC>(shifted).singularValues();
        int rank = 0;
        for (double s : ssv)
            if (s > 1e-7 * scale) ++rank;
        if (n - rank < mult) info.diagonalizable = false;
    }
    return info;
}

FixedPointLabel classify_fixed_point(const UniformMPS& m, double tol) {
    FixedPointLabel label;
    std::vector<MatrixC> live;
    for (const auto& a : m.tensors)
        if (a.norm() > tol) live.push_back(a);
    if (m.D == 1 || live.size() == 1) {
        label.kind = FixedPointKind::Product;
        return label;
    }
    if (live.empty()) return label;
    const TransferMatrix t = transfer_matrix(m);
    const JordanInfo j = jordan_structure(t.e, tol);
    if (j.idempotent) {
        if (j.rank >= 2 && m.D <= 2) {
            label.kind = FixedPointKind::Ghz;
            return label;
        }
        if (j.rank == 1) {
            const double S = mps_block_entropy(m, 1);
            if (S < 1e-6) label.kind = FixedPointKind::Product;
            else if (m.D == 2) label.kind = FixedPointKind::ClusterValence;
            else label.kind = FixedPointKind::SymmetricD2;
            return label;
        }
        return label;
    }
    if (j.diagonalizable || m.D > 2) return label;
    if (auto w = match_w(live, tol)) return *w;
    if (auto dw = match_domain_wall(live, tol)) return *dw;
    return label;
}

UniformMPS symmetric_fixed_point(int D) {
    if (D < 2) throw DomainError("symmetric_fixed_point: D must be >= 2");
    std::vector<MatrixC> t;
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            MatrixC x = MatrixC::Zero(D, D);
            x(a, b) = 1.0 / std::sqrt(static_cast<double>(D));
            t.push_back(std::move(x));
        }
    return make_mps(std::move(t));
}

UniformMPS product_fixed_point() {
    MatrixC zero = MatrixC::Zero(1, 1), one = MatrixC::Ones(1, 1);
    return make_mps({zero, one});
}

UniformMPS ghz_fixed_point() { return make_mps({(pauli(0) + pauli(3)) / 2.0, (pauli(0) - pauli(3)) / 2.0}); }

UniformMPS cluster_fixed_point() {
    std::vector<MatrixC> t{pauli(0) / 2.0};
    for (int k = 1; k <= 3; ++k) t.push_back(kI * pauli(k) / 2.0);
    return make_mps(std::move(t));
}

UniformMPS w_fixed_point(double theta) {
    MatrixC a0(2, 2), a1(2, 2);
    a0 << 1, 0, 0, std::polar(1.0, -theta);
    a1 << 0, 0, 1, 0;
    return make_mps({a0, a1});
}

UniformMPS domain_wall_fixed_point(double alpha, double beta, double theta) {
    MatrixC a0(2, 2), a1(2, 2), a2(2, 2);
    a0 << 0, 0, std::cos(alpha) * std::sin(beta), std::polar(1.0, theta);
    a1 << 0, 0, std::sin(alpha), 0;
    a2 << std::polar(1.0, -theta), 0, std::cos(alpha) * std::cos(beta), 0;
    return make_mps({a0, a1, a2});
}

double multiset_distance(const VectorC& a, const VectorC& b) {
    if (a.size() != b.size()) return INFINITY;
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        double best = INFINITY;
        Eigen::Index pick = -1;
        for (Eigen::Index j = 0; j < b.size(); ++j)
            if (!used[j] && std::abs(a[i] - b[j]) < best) {
                best = std::abs(a[i] - b[j]);
                pick = j;
            }
        used[pick] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

UniformMPS parse_tensor_text(const std::string& text) {
    std::istringstream in(text);
    int d = 0, D = 0;
    if (!(in >> d >> D) || d < 1 || D < 1) throw ContractError("tensor file: header must be 'd D'");
    std::vector<MatrixC> t(d, MatrixC::Zero(D, D));
    for (int s = 0; s < d; ++s)
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) {
                std::string tok;
                if (!(in >> tok)) throw ContractError("tensor file: truncated tensor data");
                const auto comma = tok.find(',');
                if (comma == std::string::npos) throw ContractError("tensor file: entry '" + tok + "' is not re,im");
                try {
                    size_t used_re = 0, used_im = 0;
                    const std::string re = tok.substr(0, comma), im = tok.substr(comma + 1);
                    t[s](a, b) = cplx(std::stod(re, &used_re), std::stod(im, &used_im));
                    if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw ContractError("tensor file: malformed entry '" + tok + "'");
                }
            }
    std::string extra;
    if (in >> extra) throw ContractError("tensor file: trailing data");
    return make_mps(std::move(t));
}

std::string format_tensor_text(const UniformMPS& m) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << m.d << ' ' << m.D << '\n';
    for (const auto& a : m.tensors) {
        for (int r = 0; r < m.D; ++r) {
            for (int c = 0; c < m.D; ++c) out << (c ? " " : "") << a(r, c).real() << ',' << a(r, c).imag();
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace spinlab
