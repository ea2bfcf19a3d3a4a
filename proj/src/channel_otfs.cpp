#include "ddsense/channel_otfs.hpp"

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

void check_delay(const SystemConfig& cfg, const PathParams& path, const char* scheme) {
    if (path.tau < 0.0 || path.tau >= cfg.t())
        throw std::invalid_argument(std::string(scheme) + ": 0 <= tau < T required");
}

void check_amp(const PathParams& path, Param which) {
    if (which == Param::Amp && path.amp == 0.0)
        throw std::invalid_argument("amplitude derivative undefined for a = 0");
}

// Dir(dl - tau*M*delta_f, M) for dl = l'-l in [-(M-1), M-1]
std::vector<cd> delay_dirichlet_table(const SystemConfig& cfg, const PathParams& path) {
    const int M = cfg.m;
    const double shift = path.tau * M * cfg.delta_f;
    std::vector<cd> dir(2 * M - 1);
    for (int d = -(M - 1); d <= M - 1; ++d) dir[d + M - 1] = kernels::dirichlet(d - shift, M);
    return dir;
}

// Dir(dk + nu*T*N, N) for dk = k-k' in [-(N-1), N-1]
std::vector<cd> doppler_dirichlet_table(const SystemConfig& cfg, const PathParams& path) {
    const int N = cfg.n;
    const double shift = path.nu * cfg.t() * N;
    std::vector<cd> dir(2 * N - 1);
    for (int d = -(N - 1); d <= N - 1; ++d) dir[d + N - 1] = kernels::dirichlet(d + shift, N);
    return dir;
}

} // namespace

ChannelMatrix build_zak(const SystemConfig& cfg, const PathParams& path) {
    check_delay(cfg, path, "zak_otfs");

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t();
    const int c = grid_ceil(path.tau * M * cfg.delta_f);

    const std::vector<cd> dir_m = delay_dirichlet_table(cfg, path);
    const std::vector<cd> dir_n = doppler_dirichlet_table(cfg, path);
    const cd scale = path.gain() / std::sqrt(double(mn));
    const cd wrap = std::polar(1.0, two_pi * path.nu * T); // e^{j 2 pi nu T} for l' < c

    ChannelMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::ZakOtfs};
    for (int kp = 0; kp < N; ++kp) {
        const cd rx_doppler = std::polar(1.0, -two_pi * kp / double(N)); // e^{-j 2 pi k'/N}
        for (int lp = 0; lp < M; ++lp) {
            const int row = kp * M + lp;
            cd pre = scale * std::polar(1.0, two_pi * path.nu * lp * T / M);
            if (lp < c) pre *= wrap * rx_doppler;
            for (int k = 0; k < N; ++k) {
                const cd pre_k = pre * dir_n[k - kp + N - 1];
                for (int l = 0; l < M; ++l)
                    out.entries(row, k * M + l) = pre_k * dir_m[lp - l + M - 1];
            }
        }
    }
    return out;
}

DerivativeMatrix build_zak_deriv(const SystemConfig& cfg, const PathParams& path, Param which) {
    check_delay(cfg, path, "zak_otfs");
    check_amp(path, which);

    switch (which) {
    case Param::Amp: {
        ChannelMatrix parent = build_zak(cfg, path);
        return {parent.entries / path.amp, Scheme::ZakOtfs, Param::Amp};
    }
    case Param::Phase: {
        ChannelMatrix parent = build_zak(cfg, path);
        return {cd{0.0, 1.0} * parent.entries, Scheme::ZakOtfs, Param::Phase};
    }
    case Param::Tau:
    case Param::Nu: break;
    }

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t();
    const int c = grid_ceil(path.tau * M * cfg.delta_f);
    const cd scale = path.gain() / std::sqrt(double(mn));

    DerivativeMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::ZakOtfs, which};

    if (which == Param::Tau) {
        // per-term weight -j 2 pi m delta_f inside the delay Dirichlet sum
        const double shift = path.tau * M * cfg.delta_f;
        std::vector<cd> wsum(2 * M - 1);
        for (int d = -(M - 1); d <= M - 1; ++d)
            wsum[d + M - 1] = kernels::weighted_exp_sum(d - shift, M, 0, M - 1, 0.0, 1.0);

        const std::vector<cd> dir_n = doppler_dirichlet_table(cfg, path);
        const cd wrap = std::polar(1.0, two_pi * path.nu * T);

        for (int kp = 0; kp < N; ++kp) {
            const cd rx_doppler = std::polar(1.0, -two_pi * kp / double(N));
            for (int lp = 0; lp < M; ++lp) {
                const int row = kp * M + lp;
                cd pre = scale * std::polar(1.0, two_pi * path.nu * lp * T / M);
                if (lp < c) pre *= wrap * rx_doppler;
                pre *= -j2pi * cfg.delta_f;
                for (int k = 0; k < N; ++k) {
                    const cd pre_k = pre * dir_n[k - kp + N - 1];
                    for (int l = 0; l < M; ++l)
                        out.entries(row, k * M + l) = pre_k * wsum[lp - l + M - 1];
                }
            }
        }
        return out;
    }

    // nu derivative: weight j 2 pi (l'T/M + nT) per Doppler term, plus an
    // extra +T inside the wrap branch
    const double doppler_shift = path.nu * T * N;
    std::vector<cd> s0(2 * N - 1), s1(2 * N - 1);
    for (int d = -(N - 1); d <= N - 1; ++d) {
        const double phi = d + doppler_shift;
        s0[d + N - 1] = kernels::dirichlet(phi, N);
        s1[d + N - 1] = kernels::weighted_exp_sum(phi, N, 0, N - 1, 0.0, 1.0);
    }
    const std::vector<cd> dir_m = delay_dirichlet_table(cfg, path);

    for (int kp = 0; kp < N; ++kp) {
        const cd rx_doppler = std::polar(1.0, -two_pi * kp / double(N));
        for (int lp = 0; lp < M; ++lp) {
            const int row = kp * M + lp;
            const bool wrapped = lp < c;
            const double t0 = lp * T / M + (wrapped ? T : 0.0); // time offset of row sample
            cd pre = scale * std::polar(1.0, two_pi * path.nu * t0);
            if (wrapped) pre *= rx_doppler;
            for (int k = 0; k < N; ++k) {
                const int off = k - kp + N - 1;
                const cd weighted = j2pi * (t0 * s0[off] + T * s1[off]);
                const cd pre_k = pre * weighted;
                for (int l = 0; l < M; ++l)
                    out.entries(row, k * M + l) = pre_k * dir_m[lp - l + M - 1];
            }
        }
    }
    return out;
}

ChannelMatrix build_twostep(const SystemConfig& cfg, const PathParams& path) {
    check_delay(cfg, path, "two_step_otfs");

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t();
    const int c = grid_ceil(path.tau * M * cfg.delta_f);

    const std::vector<cd> dir_m = delay_dirichlet_table(cfg, path);
    const std::vector<cd> dir_n = doppler_dirichlet_table(cfg, path);

    const cd scale = path.gain() / double(mn) * std::polar(1.0, two_pi * path.nu * path.tau);

    // e^{j 2 pi nu l/(M delta_f)}, plus the wrap factor for columns l >= M-c
    std::vector<cd> col(M);
    for (int l = 0; l < M; ++l) col[l] = std::polar(1.0, two_pi * path.nu * l / (M * cfg.delta_f));
    std::vector<cd> wrap_k(N);
    for (int k = 0; k < N; ++k)
        wrap_k[k] = std::polar(1.0, -two_pi * (path.nu * T + k / double(N)));

    ChannelMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::TwoStepOtfs};
    for (int kp = 0; kp < N; ++kp) {
        for (int lp = 0; lp < M; ++lp) {
            const int row = kp * M + lp;
            for (int k = 0; k < N; ++k) {
                const cd pre_k = scale * dir_n[k - kp + N - 1];
                for (int l = 0; l < M; ++l) {
                    cd v = pre_k * dir_m[lp - l + M - 1] * col[l];
                    if (l >= M - c) v *= wrap_k[k];
                    out.entries(row, k * M + l) = v;
                }
            }
        }
    }
    return out;
}

DerivativeMatrix build_twostep_deriv(const SystemConfig& cfg, const PathParams& path, Param which) {
    check_delay(cfg, path, "two_step_otfs");
    check_amp(path, which);

    switch (which) {
    case Param::Amp: {
        ChannelMatrix parent = build_twostep(cfg, path);
        return {parent.entries / path.amp, Scheme::TwoStepOtfs, Param::Amp};
    }
    case Param::Phase: {
        ChannelMatrix parent = build_twostep(cfg, path);
        return {cd{0.0, 1.0} * parent.entries, Scheme::TwoStepOtfs, Param::Phase};
    }
    case Param::Tau:
    case Param::Nu: break;
    }

    const int M = cfg.m, N = cfg.n, mn = cfg.grid_size();
    const double T = cfg.t();
    const int c = grid_ceil(path.tau * M * cfg.delta_f);
    const double dd_shift = path.tau * M * cfg.delta_f;
    const double doppler_shift = path.nu * T * N;

    const cd scale =
        path.gain() / double(mn) * std::polar(1.0, two_pi * path.nu * path.tau) * j2pi;

    std::vector<cd> col(M);
    for (int l = 0; l < M; ++l) col[l] = std::polar(1.0, two_pi * path.nu * l / (M * cfg.delta_f));
    std::vector<cd> wrap_k(N);
    for (int k = 0; k < N; ++k)
        wrap_k[k] = std::polar(1.0, -two_pi * (path.nu * T + k / double(N)));

    DerivativeMatrix out{Eigen::MatrixXcd::Zero(mn, mn), Scheme::TwoStepOtfs, which};

    if (which == Param::Tau) {
        // weight (nu - m delta_f) inside the delay sum
        std::vector<cd> wsum(2 * M - 1);
        for (int d = -(M - 1); d <= M - 1; ++d)
            wsum[d + M - 1] =
                kernels::weighted_exp_sum(d - dd_shift, M, 0, M - 1, path.nu, -cfg.delta_f);
        const std::vector<cd> dir_n = doppler_dirichlet_table(cfg, path);

        for (int kp = 0; kp < N; ++kp) {
            for (int lp = 0; lp < M; ++lp) {
                const int row = kp * M + lp;
                for (int k = 0; k < N; ++k) {
                    const cd pre_k = scale * dir_n[k - kp + N - 1];
                    for (int l = 0; l < M; ++l) {
                        cd v = pre_k * wsum[lp - l + M - 1] * col[l];
                        if (l >= M - c) v *= wrap_k[k];
                        out.entries(row, k * M + l) = v;
                    }
                }
            }
        }
        return out;
    }

    // nu derivative: weight (l/(M delta_f) + nT + tau) per Doppler term,
    // shifted by -T in the wrap columns
    std::vector<cd> s0(2 * N - 1), s1(2 * N - 1);
    for (int d = -(N - 1); d <= N - 1; ++d) {
        const double phi = d + doppler_shift;
        s0[d + N - 1] = kernels::dirichlet(phi, N);
        s1[d + N - 1] = kernels::weighted_exp_sum(phi, N, 0, N - 1, 0.0, 1.0);
    }
    const std::vector<cd> dir_m = delay_dirichlet_table(cfg, path);

    for (int kp = 0; kp < N; ++kp) {
        for (int lp = 0; lp < M; ++lp) {
            const int row = kp * M + lp;
            for (int k = 0; k < N; ++k) {
                const int off = k - kp + N - 1;
                for (int l = 0; l < M; ++l) {
                    const bool wrapped = l >= M - c;
                    const double base_time = l / (M * cfg.delta_f) + path.tau - (wrapped ? T : 0.0);
                    cd v = scale * dir_m[lp - l + M - 1] * col[l] *
                           (base_time * s0[off] + T * s1[off]);
                    if (wrapped) v *= wrap_k[k];
                    out.entries(row, k * M + l) = v;
                }
            }
        }
    }
    return out;
}

} // namespace ddsense
