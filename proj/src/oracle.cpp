#include "ddsense/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace ddsense::oracle {

namespace {

using cd = std::complex<double>;

constexpr double two_pi = 2.0 * std::numbers::pi;

// local copy of the integer-boundary rule; the oracle deliberately shares
// no code with the fast builders
int split_index(double k) {
    const double r = std::round(k);
    if (std::abs(k - r) < 1e-9) return static_cast<int>(r);
    return static_cast<int>(std::ceil(k));
}

cd expj(double angle) { return std::exp(cd(0.0, angle)); }

Eigen::MatrixXcd cpfree_elementwise(const SystemConfig& cfg, const PathParams& path) {
    const int M = cfg.m, N = cfg.n;
    const double T = 1.0 / cfg.delta_f;
    const double tau = path.tau, nu = path.nu;
    if (tau < 0.0 || tau >= T) throw std::invalid_argument("cp_free_ofdm: 0 <= tau < T required");
    const cd h = path.amp * expj(path.phase);
    const int c = split_index(tau * M / T);

    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(M * N, M * N);
    for (int np = 0; np < N; ++np)
        for (int mp = 0; mp < M; ++mp)
            for (int n = 0; n < N; ++n)
                for (int m = 0; m < M; ++m) {
                    int i_lo, i_hi;
                    if (n == np) {
                        i_lo = c;
                        i_hi = M - 1;
                    } else if (n == np - 1) {
                        i_lo = 0;
                        i_hi = c - 1;
                    } else {
                        continue;
                    }
                    cd sum = 0.0;
                    for (int i = i_lo; i <= i_hi; ++i)
                        sum += expj(two_pi * (m - mp + nu * T) * i / M);
                    psi(np * M + mp, n * M + m) = h / std::sqrt(double(M)) *
                                                  expj(two_pi * (nu * np * T - m * cfg.delta_f * tau)) *
                                                  sum;
                }
    return psi;
}

Eigen::MatrixXcd cpofdm_elementwise(const SystemConfig& cfg, const PathParams& path) {
    const int M = cfg.m, N = cfg.n;
    const double T = 1.0 / cfg.delta_f;
    const double Tp = T + cfg.t_cp;
    const double tau = path.tau, nu = path.nu;
    if (tau < 0.0 || tau > cfg.t_cp) throw std::invalid_argument("cp_ofdm: 0 <= tau <= T_cp required");
    const cd h = path.amp * expj(path.phase);

    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(M * N, M * N);
    for (int np = 0; np < N; ++np)
        for (int mp = 0; mp < M; ++mp)
            for (int m = 0; m < M; ++m) {
                cd dir = 0.0;
                for (int z = 0; z < M; ++z) dir += expj(two_pi * (m - mp + nu * T) * z / M);
                psi(np * M + mp, np * M + m) = h / std::sqrt(double(M)) *
                                               expj(-two_pi * m * cfg.delta_f * tau) *
                                               expj(two_pi * nu * (np * Tp + cfg.t_cp)) * dir;
            }
    return psi;
}

Eigen::MatrixXcd zak_elementwise(const SystemConfig& cfg, const PathParams& path) {
    const int M = cfg.m, N = cfg.n;
    const double T = 1.0 / cfg.delta_f;
    const double tau = path.tau, nu = path.nu;
    if (tau < 0.0 || tau >= T) throw std::invalid_argument("zak_otfs: 0 <= tau < T required");
    const cd h = path.amp * expj(path.phase);
    const int c = split_index(tau * M / T);

    Eigen::MatrixXcd psi(M * N, M * N);
    for (int kp = 0; kp < N; ++kp)
        for (int lp = 0; lp < M; ++lp)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < M; ++l) {
                    cd dir_m = 0.0;
                    for (int z = 0; z < M; ++z)
                        dir_m += expj(two_pi * (lp - l - tau * cfg.delta_f * M) * z / M);
                    cd dir_n = 0.0;
                    for (int z = 0; z < N; ++z)
                        dir_n += expj(two_pi * (k - kp + nu * T * N) * z / N);
                    cd v = h / std::sqrt(double(M * N)) * expj(two_pi * nu * lp * T / M) * dir_m * dir_n;
                    if (lp < c) v *= expj(two_pi * nu * T) * expj(-two_pi * kp / double(N));
                    psi(kp * M + lp, k * M + l) = v;
                }
    return psi;
}

Eigen::MatrixXcd twostep_elementwise(const SystemConfig& cfg, const PathParams& path) {
    const int M = cfg.m, N = cfg.n;
    const double T = 1.0 / cfg.delta_f;
    const double tau = path.tau, nu = path.nu;
    if (tau < 0.0 || tau >= T) throw std::invalid_argument("two_step_otfs: 0 <= tau < T required");
    const cd h = path.amp * expj(path.phase);
    const int c = split_index(tau * M / T);

    Eigen::MatrixXcd psi(M * N, M * N);
    for (int kp = 0; kp < N; ++kp)
        for (int lp = 0; lp < M; ++lp)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < M; ++l) {
                    cd dir_n = 0.0;
                    for (int z = 0; z < N; ++z)
                        dir_n += expj(two_pi * (nu * N * T - kp + k) * z / N);
                    cd dir_m = 0.0;
                    for (int z = 0; z < M; ++z)
                        dir_m += expj(two_pi * (lp - l - tau * M * cfg.delta_f) * z / M);
                    cd v = h / double(M * N) * expj(two_pi * nu * tau) * dir_n * dir_m *
                           expj(two_pi * nu * l / (M * cfg.delta_f));
                    if (l >= M - c) v *= expj(-two_pi * (nu * T + k / double(N)));
                    psi(kp * M + lp, k * M + l) = v;
                }
    return psi;
}

} // namespace

Eigen::MatrixXcd elementwise_channel(Scheme scheme, const SystemConfig& cfg,
                                     const PathParams& path) {
    switch (scheme) {
    case Scheme::CpFreeOfdm: return cpfree_elementwise(cfg, path);
    case Scheme::CpOfdm: return cpofdm_elementwise(cfg, path);
    case Scheme::ZakOtfs: return zak_elementwise(cfg, path);
    case Scheme::TwoStepOtfs: return twostep_elementwise(cfg, path);
    }
    throw std::invalid_argument("elementwise_channel: unknown scheme");
}

double default_fd_step(const SystemConfig& cfg, const PathParams& path, Param which) {
    switch (which) {
    case Param::Tau: return 1e-4 * cfg.t() / cfg.m;
    case Param::Nu: return 1e-4 * cfg.delta_f / cfg.n;
    case Param::Amp: return 1e-6 * path.amp;
    case Param::Phase: return 1e-6;
    }
    throw std::invalid_argument("default_fd_step: unknown parameter");
}

Eigen::MatrixXcd fd_derivative(Scheme scheme, const SystemConfig& cfg, const PathParams& path,
                               Param which, double step) {
    if (step <= 0.0) step = default_fd_step(cfg, path, which);
    if (step <= 0.0)
        throw std::invalid_argument("fd_derivative: step > 0 required (amp derivative of a "
                                    "zero-amplitude path has no default step)");

    PathParams lo = path, hi = path;
    switch (which) {
    case Param::Amp:
        lo.amp -= step;
        hi.amp += step;
        break;
    case Param::Phase:
        lo.phase -= step;
        hi.phase += step;
        break;
    case Param::Tau: {
        lo.tau -= step;
        hi.tau += step;
        if (lo.tau < 0.0) throw std::domain_error("fd_derivative: tau - step < 0");
        const double scale = cfg.m * cfg.delta_f;
        if (split_index(lo.tau * scale) != split_index(hi.tau * scale))
            throw std::domain_error(
                "fd_derivative: step crosses a floor/ceil branch of the delay interval split; "
                "choose a point with fractional part away from the sample grid");
        break;
    }
    case Param::Nu:
        lo.nu -= step;
        hi.nu += step;
        break;
    }

    const Eigen::MatrixXcd plus = build_channel(scheme, cfg, hi).entries;
    const Eigen::MatrixXcd minus = build_channel(scheme, cfg, lo).entries;
    return (plus - minus) / (2.0 * step);
}

FisherMatrix numeric_fim(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                         const PilotGrid& pilots, const NoiseModel& noise) {
    if (!(noise.sigma2 > 0.0)) throw std::invalid_argument("sigma2 > 0 required");
    const int dim = 4 * paths.count();

    std::vector<Eigen::VectorXcd> u(dim);
    for (int p = 0; p < paths.count(); ++p)
        for (Param which : all_params)
            u[param_index(p, which)] =
                fd_derivative(scheme, cfg, paths.paths[p], which) * pilots.x;

    FisherMatrix fim{Eigen::MatrixXd(dim, dim)};
    const double scale = 2.0 / noise.sigma2;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            const double v = scale * u[j].dot(u[i]).real();
            fim.entries(i, j) = v;
            fim.entries(j, i) = v;
        }
    return fim;
}

ComparisonReport compare(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("compare: shape mismatch");

    ComparisonReport r;
    for (Eigen::Index col = 0; col < a.cols(); ++col)
        for (Eigen::Index row = 0; row < a.rows(); ++row) {
            const double e = std::abs(a(row, col) - b(row, col));
            if (e > r.max_abs_error) {
                r.max_abs_error = e;
                r.worst_row = row;
                r.worst_col = col;
            }
        }
    const double ref = b.norm();
    const double diff = (a - b).norm();
    if (diff == 0.0)
        r.relative_frobenius_error = 0.0;
    else
        r.relative_frobenius_error =
            ref > 0.0 ? diff / ref : std::numeric_limits<double>::infinity();
    r.pass = r.relative_frobenius_error <= tol;
    return r;
}

PathParams random_nonboundary_path(SplitMix64& rng, const SystemConfig& cfg, Scheme scheme) {
    PathParams path;
    path.amp = 0.3 + 1.2 * rng.next_double();
    path.phase = two_pi * rng.next_double();

    // delay with fractional grid position in [0.1, 0.9]
    const double T = cfg.t();
    double max_tau = (scheme == Scheme::CpOfdm) ? std::min(cfg.t_cp, T) : T;
    const int q_max = std::max(1, static_cast<int>(std::floor(max_tau * cfg.m / T)) - 1);
    const int q = static_cast<int>(rng.next() % static_cast<std::uint64_t>(q_max));
    const double frac = 0.1 + 0.8 * rng.next_double();
    path.tau = (q + frac) * T / cfg.m;

    // Doppler within a few bins, fractional in the Doppler grid as well
    const int g = static_cast<int>(rng.next() % 5) - 2;
    path.nu = (g + 0.1 + 0.8 * rng.next_double()) * cfg.delta_f / cfg.n;
    return path;
}

bool selfcheck(std::ostream& log) {
    bool all_ok = true;

    SystemConfig cfg;
    cfg.m = 8;
    cfg.n = 8;
    cfg.delta_f = 15e3;
    cfg.f_c = 3e9;
    cfg.t_cp = cfg.t() / 4.0;

    for (Scheme scheme : all_schemes) {
        SplitMix64 rng(0xDD5EC0DEULL ^ static_cast<std::uint64_t>(scheme));

        double worst_eq = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const PathParams path = random_nonboundary_path(rng, cfg, scheme);
            const auto fast = build_channel(scheme, cfg, path).entries;
            const auto ref = elementwise_channel(scheme, cfg, path);
            const auto rep = compare(fast, ref, 1e-12);
            worst_eq = std::max(worst_eq, rep.relative_frobenius_error);
        }
        const bool eq_ok = worst_eq <= 1e-12;
        all_ok = all_ok && eq_ok;
        log << (eq_ok ? "ok  " : "FAIL") << "  " << to_string(scheme)
            << " elementwise equivalence (20 configs), worst rel err " << worst_eq << "\n";

        for (Param which : all_params) {
            double worst_fd = 0.0;
            SplitMix64 fd_rng(0xF1D0ULL ^ (static_cast<std::uint64_t>(scheme) << 8) ^
                              static_cast<std::uint64_t>(which));
            for (int trial = 0; trial < 10; ++trial) {
                const PathParams path = random_nonboundary_path(fd_rng, cfg, scheme);
                const auto analytic = build_derivative(scheme, cfg, path, which).entries;
                const auto fd = fd_derivative(scheme, cfg, path, which);
                const auto rep = compare(fd, analytic, 1e-6);
                worst_fd = std::max(worst_fd, rep.relative_frobenius_error);
            }
            const bool fd_ok = worst_fd <= 1e-6;
            all_ok = all_ok && fd_ok;
            log << (fd_ok ? "ok  " : "FAIL") << "  " << to_string(scheme) << " d/d"
                << to_string(which) << " finite-difference check (10 configs), worst rel err "
                << worst_fd << "\n";
        }
    }
    return all_ok;
}

} // namespace ddsense::oracle
