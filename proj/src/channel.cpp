#include "ddsense/channel.hpp"

#include <cmath>

#include "ddsense/channel_ofdm.hpp"
#include "ddsense/channel_otfs.hpp"

namespace ddsense {

int grid_ceil(double k) {
    const double r = std::round(k);
    if (std::abs(k - r) < 1e-9) return static_cast<int>(r);
    return static_cast<int>(std::ceil(k));
}

ChannelMatrix build_channel(Scheme scheme, const SystemConfig& cfg, const PathParams& path) {
    switch (scheme) {
    case Scheme::CpFreeOfdm: return build_cpfree(cfg, path);
    case Scheme::CpOfdm: return build_cpofdm(cfg, path);
    case Scheme::ZakOtfs: return build_zak(cfg, path);
    case Scheme::TwoStepOtfs: return build_twostep(cfg, path);
    }
    throw std::invalid_argument("build_channel: unknown scheme");
}

DerivativeMatrix build_derivative(Scheme scheme, const SystemConfig& cfg, const PathParams& path,
                                  Param which) {
    switch (scheme) {
    case Scheme::CpFreeOfdm: return build_cpfree_deriv(cfg, path, which);
    case Scheme::CpOfdm: return build_cpofdm_deriv(cfg, path, which);
    case Scheme::ZakOtfs: return build_zak_deriv(cfg, path, which);
    case Scheme::TwoStepOtfs: return build_twostep_deriv(cfg, path, which);
    }
    throw std::invalid_argument("build_derivative: unknown scheme");
}

} // namespace ddsense
