#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ddsense {

/// The four modem models the toolkit covers.
enum class Scheme {
    CpFreeOfdm,
    CpOfdm,
    ZakOtfs,
    TwoStepOtfs,
};

/// Per-path parameters, in the canonical packing order.
enum class Param {
    Amp = 0,
    Phase = 1,
    Tau = 2,
    Nu = 3,
};

inline constexpr std::array<Scheme, 4> all_schemes{Scheme::CpFreeOfdm, Scheme::CpOfdm,
                                                   Scheme::ZakOtfs, Scheme::TwoStepOtfs};

inline constexpr std::array<Param, 4> all_params{Param::Amp, Param::Phase, Param::Tau, Param::Nu};

constexpr std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::CpFreeOfdm: return "cp_free_ofdm";
    case Scheme::CpOfdm: return "cp_ofdm";
    case Scheme::ZakOtfs: return "zak_otfs";
    case Scheme::TwoStepOtfs: return "two_step_otfs";
    }
    return "unknown";
}

constexpr std::string_view to_string(Param p) {
    switch (p) {
    case Param::Amp: return "amp";
    case Param::Phase: return "phase";
    case Param::Tau: return "tau";
    case Param::Nu: return "nu";
    }
    return "unknown";
}

inline Scheme scheme_from_string(std::string_view name) {
    for (Scheme s : all_schemes)
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown scheme: " + std::string(name));
}

inline Param param_from_string(std::string_view name) {
    for (Param p : all_params)
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown parameter: " + std::string(name));
}

} // namespace ddsense
