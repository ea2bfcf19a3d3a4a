#pragma once

#include "ddsense/channel.hpp"

namespace ddsense {

/**
 * CP-Free OFDM channel matrix: block lower-bidiagonal, with the diagonal
 * blocks carrying the current-symbol response and the subdiagonal blocks
 * the one-symbol ISI leakage. Requires 0 <= tau < T.
 *
 * With k = tau*M/T, sample indices i = 0..ceil(k)-1 of each symbol fall
 * into the ISI block and i = ceil(k)..M-1 into the current block; a delay
 * exactly on the grid contributes no boundary sample to the ISI side, so
 * tau = 0 gives a pure block-diagonal response.
 */
ChannelMatrix build_cpfree(const SystemConfig& cfg, const PathParams& path);

/**
 * Analytic parameter derivative of build_cpfree. The floor/ceil summation
 * limits are held fixed, so the derivative is the piecewise-smooth branch
 * value; integer tau*M/T are non-differentiable points.
 */
DerivativeMatrix build_cpfree_deriv(const SystemConfig& cfg, const PathParams& path, Param which);

/**
 * CP-OFDM channel matrix: block diagonal, block n' entry (m', m) is
 *   (1/sqrt(M)) * h * e^{-j*2*pi*m*delta_f*tau} * e^{j*2*pi*nu*(n'*T'+T_cp)}
 *     * Dir(m - m' + nu*T, M)
 * with T' = T + T_cp. Requires 0 <= tau <= T_cp.
 */
ChannelMatrix build_cpofdm(const SystemConfig& cfg, const PathParams& path);

/// Analytic parameter derivative of build_cpofdm.
DerivativeMatrix build_cpofdm_deriv(const SystemConfig& cfg, const PathParams& path, Param which);

} // namespace ddsense
