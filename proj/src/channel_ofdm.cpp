#include "ddsense/channel_ofdm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ddsense/kernels.hpp"

namespace ddsense {

namespace {

using cd = std::complex<double>;

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr cd j2pi{0.0, two_pi};

void check_cpfree_delay(const SystemConfig& cfg, const PathParams& path) {
    if (path.tau < 0.0 || path.tau >= cfg.t())
        throw std::invalid_argument("cp_free_ofdm: 0 <= tau < T required");
}

void check_cpofdm_delay(const SystemConfig& cfg, const PathParams& path) {
    if (path.tau < 0.0 || path.tau > cfg.t_cp)
        throw std::invalid_argument("cp_ofdm: 0 <= tau <= T_cp required");
}

void check_amp(const PathParams& path, Param which) {
    if (which == Param::Amp && path.amp == 0.0)
        throw std::invalid_argument("amplitude derivative undefined for a = 0");
}

// Column-m phase e^{-j 2 pi m delta_f tau}, shared by both OFDM variants.
std::vector<cd> delay_column_phases(const SystemConfig& cfg, const PathParams& path) {
    std::vector<cd> col(cfg.m);
    for (int m = 0; m < cfg.m; ++m) col[m] = std::polar(1.0, -two_pi * m * cfg.delta_f * path.tau);
    return col;
}

DerivativeMatrix tau_from_parent(const ChannelMatrix& parent, const SystemConfig& cfg) {
    // d/dtau only touches the e^{-j 2 pi m delta_f tau} factor
    DerivativeMatrix d{parent.entries, parent.scheme, Param::Tau};
    const int mn = cfg.grid_size();
    for (int col = 0; col < mn; ++col) {
        const int m = col % cfg.m;
        d.entries.col(col) *= -j2pi * (m * cfg.delta_f);
    }
    return d;
}

} // namespace

ChannelMatrix build_cpfree(const SystemConfig& cfg, const PathParams& path) {
    check_cpfree_delay(cfg, path);

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t();
    const int c = grid_ceil(path.tau * M * cfg.delta_f); // ISI/current split index

    // Both inner sums depend only on d = m - m'.
    std::vector<cd> isi(2 * M - 1), cur(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d) {
        const double phi = d + path.nu * T;
        isi[d + M - 1] = kernels::weighted_exp_sum(phi, M, 0, c - 1, 1.0, 0.0);
        cur[d + M - 1] = kernels::weighted_exp_sum(phi, M, c, M - 1, 1.0, 0.0);
    }

    const cd scale = path.gain() / std::sqrt(double(M));
    const std::vector<cd> col = delay_column_phases(cfg, path);

    ChannelMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::CpFreeOfdm};
    for (int np = 0; np < N; ++np) {
        const cd row_phase = scale * std::polar(1.0, two_pi * path.nu * np * T);
        for (int mp = 0; mp < M; ++mp) {
            const int row = np * M + mp;
            for (int m = 0; m < M; ++m) {
                const cd base = row_phase * col[m];
                out.entries(row, np * M + m) = base * cur[m - mp + M - 1];
                if (np >= 1) out.entries(row, (np - 1) * M + m) = base * isi[m - mp + M - 1];
            }
        }
    }
    return out;
}

DerivativeMatrix build_cpfree_deriv(const SystemConfig& cfg, const PathParams& path, Param which) {
    check_cpfree_delay(cfg, path);
    check_amp(path, which);

    switch (which) {
    case Param::Amp: {
        ChannelMatrix parent = build_cpfree(cfg, path);
        return {parent.entries / path.amp, Scheme::CpFreeOfdm, Param::Amp};
    }
    case Param::Phase: {
        ChannelMatrix parent = build_cpfree(cfg, path);
        return {cd{0.0, 1.0} * parent.entries, Scheme::CpFreeOfdm, Param::Phase};
    }
    case Param::Tau: return tau_from_parent(build_cpfree(cfg, path), cfg);
    case Param::Nu: break;
    }

    // nu derivative: per-term weight j 2 pi (T i / M + n' T), limits held fixed
    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t();
    const int c = grid_ceil(path.tau * M * cfg.delta_f);

    std::vector<cd> isi0(2 * M - 1), isi1(2 * M - 1), cur0(2 * M - 1), cur1(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d) {
        const double phi = d + path.nu * T;
        isi0[d + M - 1] = kernels::weighted_exp_sum(phi, M, 0, c - 1, 1.0, 0.0);
        isi1[d + M - 1] = kernels::weighted_exp_sum(phi, M, 0, c - 1, 0.0, 1.0);
        cur0[d + M - 1] = kernels::weighted_exp_sum(phi, M, c, M - 1, 1.0, 0.0);
        cur1[d + M - 1] = kernels::weighted_exp_sum(phi, M, c, M - 1, 0.0, 1.0);
    }

    const cd scale = path.gain() / std::sqrt(double(M));
    const std::vector<cd> col = delay_column_phases(cfg, path);

    DerivativeMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::CpFreeOfdm, Param::Nu};
    for (int np = 0; np < N; ++np) {
        const cd row_phase = scale * std::polar(1.0, two_pi * path.nu * np * T);
        const double sym_time = np * T;
        for (int mp = 0; mp < M; ++mp) {
            const int row = np * M + mp;
            const int off = M - 1 - mp;
            for (int m = 0; m < M; ++m) {
                const cd base = row_phase * col[m];
                out.entries(row, np * M + m) =
                    base * j2pi * (sym_time * cur0[m + off] + (T / M) * cur1[m + off]);
                if (np >= 1)
                    out.entries(row, (np - 1) * M + m) =
                        base * j2pi * (sym_time * isi0[m + off] + (T / M) * isi1[m + off]);
            }
        }
    }
    return out;
}

ChannelMatrix build_cpofdm(const SystemConfig& cfg, const PathParams& path) {
    check_cpofdm_delay(cfg, path);

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t(), Tp = cfg.t_prime();

    std::vector<cd> dir(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d)
        dir[d + M - 1] = kernels::dirichlet(d + path.nu * T, M);

    const cd scale = path.gain() / std::sqrt(double(M));
    const std::vector<cd> col = delay_column_phases(cfg, path);

    ChannelMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::CpOfdm};
    for (int np = 0; np < N; ++np) {
        const cd sym_phase = scale * std::polar(1.0, two_pi * path.nu * (np * Tp + cfg.t_cp));
        for (int mp = 0; mp < M; ++mp) {
            const int row = np * M + mp;
            for (int m = 0; m < M; ++m)
                out.entries(row, np * M + m) = sym_phase * col[m] * dir[m - mp + M - 1];
        }
    }
    return out;
}

DerivativeMatrix build_cpofdm_deriv(const SystemConfig& cfg, const PathParams& path, Param which) {
    check_cpofdm_delay(cfg, path);
    check_amp(path, which);

    switch (which) {
    case Param::Amp: {
        ChannelMatrix parent = build_cpofdm(cfg, path);
        return {parent.entries / path.amp, Scheme::CpOfdm, Param::Amp};
    }
    case Param::Phase: {
        ChannelMatrix parent = build_cpofdm(cfg, path);
        return {cd{0.0, 1.0} * parent.entries, Scheme::CpOfdm, Param::Phase};
    }
    case Param::Tau: {
        DerivativeMatrix d = tau_from_parent(build_cpofdm(cfg, path), cfg);
        d.scheme = Scheme::CpOfdm;
        return d;
    }
    case Param::Nu: break;
    }

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t(), Tp = cfg.t_prime();

    std::vector<cd> s0(2 * M - 1), s1(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d) {
        const double phi = d + path.nu * T;
        s0[d + M - 1] = kernels::dirichlet(phi, M);
        s1[d + M - 1] = kernels::weighted_exp_sum(phi, M, 0, M - 1, 0.0, 1.0);
    }

    const cd scale = path.gain() / std::sqrt(double(M));
    const std::vector<cd> col = delay_column_phases(cfg, path);

    DerivativeMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::CpOfdm, Param::Nu};
    for (int np = 0; np < N; ++np) {
        const double sym_time = np * Tp + cfg.t_cp;
        const cd sym_phase = scale * std::polar(1.0, two_pi * path.nu * sym_time);
        for (int mp = 0; mp < M; ++mp) {
            const int row = np * M + mp;
            const int off = M - 1 - mp;
            for (int m = 0; m < M; ++m)
                out.entries(row, np * M + m) =
                    sym_phase * col[m] * j2pi * (sym_time * s0[m + off] + (T / M) * s1[m + off]);
        }
    }
    return out;
}

} // namespace ddsense
