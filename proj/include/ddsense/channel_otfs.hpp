#pragma once

#include "ddsense/channel.hpp"

namespace ddsense {

/**
 * Zak-receiver OTFS channel matrix in the DD domain. Row k'M+l' (Doppler
 * outer, delay inner), column kM+l. With c = ceil(tau*M/T), rows with
 * l' >= c carry the in-symbol response and rows with l' < c pick up the
 * extra wrap phase e^{j*2*pi*nu*T} * e^{-j*2*pi*k'/N}. Requires tau < T.
 *
 * The 1/sqrt(MN) normalization of the Zak receiver is kept as is, so the
 * tau = nu = 0, h = 1 case equals sqrt(MN)*I.
 */
ChannelMatrix build_zak(const SystemConfig& cfg, const PathParams& path);

/// Analytic parameter derivative of build_zak, interval memberships fixed.
DerivativeMatrix build_zak_deriv(const SystemConfig& cfg, const PathParams& path, Param which);

/**
 * Two-step (matched filter + SFFT) OTFS channel matrix in the DD domain.
 * Branching is on the transmit delay column l: columns l <= M-1-c keep
 * factor 1, columns l >= M-c pick up e^{-j*2*pi*(nu*T + k/N)}, with
 * c = ceil(tau*M/T). Carries the 1/(MN) receiver normalization, so the
 * tau = nu = 0, h = 1 case equals the identity. Requires tau < T.
 */
ChannelMatrix build_twostep(const SystemConfig& cfg, const PathParams& path);

/// Analytic parameter derivative of build_twostep.
DerivativeMatrix build_twostep_deriv(const SystemConfig& cfg, const PathParams& path, Param which);

} // namespace ddsense
