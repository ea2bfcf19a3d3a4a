#pragma once

#include <Eigen/Dense>

#include "ddsense/core.hpp"
#include "ddsense/types.hpp"

namespace ddsense {

/**
 * Dense MN x MN single-path channel matrix in the scheme's native domain.
 *
 * Rows index the receiver grid (symbol/Doppler outer, subcarrier/delay
 * inner), columns the transmit grid, matching the stacking of PilotGrid.
 * Entries scale linearly in the path amplitude and rotate by e^{j*delta}
 * under a phase shift delta.
 */
struct ChannelMatrix {
    Eigen::MatrixXcd entries;
    Scheme scheme{};
};

/// Entry-wise analytic partial derivative of a ChannelMatrix.
struct DerivativeMatrix {
    Eigen::MatrixXcd entries;
    Scheme scheme{};
    Param which{};
};

/**
 * Integer boundary index used by every interval split: effectively
 * ceil(k) with values within 1e-9 of an integer snapped onto it, so a
 * delay sitting exactly on the sample grid lands in the current-symbol
 * branch instead of straddling two intervals.
 */
int grid_ceil(double k);

/// Dispatches to the per-scheme builder.
ChannelMatrix build_channel(Scheme scheme, const SystemConfig& cfg, const PathParams& path);

/// Dispatches to the per-scheme analytic derivative builder.
DerivativeMatrix build_derivative(Scheme scheme, const SystemConfig& cfg, const PathParams& path,
                                  Param which);

} // namespace ddsense
