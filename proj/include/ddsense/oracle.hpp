#pragma once

#include <Eigen/Dense>

#include "ddsense/channel.hpp"
#include "ddsense/core.hpp"
#include "ddsense/fim.hpp"
#include "ddsense/types.hpp"

namespace ddsense::oracle {

/// Outcome of an entry-wise matrix comparison against a tolerance.
struct ComparisonReport {
    double max_abs_error = 0.0;
    double relative_frobenius_error = 0.0;
    Eigen::Index worst_row = 0;
    Eigen::Index worst_col = 0;
    bool pass = false;
};

/**
 * Naive element-wise channel builder: evaluates the closed forms entry by
 * entry with plain scalar loops. Shares no arithmetic helpers with the
 * fast builders; exists purely to cross-check them.
 */
Eigen::MatrixXcd elementwise_channel(Scheme scheme, const SystemConfig& cfg,
                                     const PathParams& path);

/// Default central-difference step for each parameter.
double default_fd_step(const SystemConfig& cfg, const PathParams& path, Param which);

/**
 * Central finite difference (Psi(theta+h) - Psi(theta-h)) / (2h) of the
 * fast channel builder. Throws std::domain_error if the tau perturbation
 * crosses a floor/ceil interval boundary (the derivative is piecewise;
 * differencing across a breakpoint is meaningless). Pass step <= 0 to use
 * the default.
 */
Eigen::MatrixXcd fd_derivative(Scheme scheme, const SystemConfig& cfg, const PathParams& path,
                               Param which, double step = 0.0);

/// Fisher information assembled from finite-difference derivative matrices.
FisherMatrix numeric_fim(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                         const PilotGrid& pilots, const NoiseModel& noise);

/// Entry-wise comparison; pass iff relative Frobenius error <= tol.
ComparisonReport compare(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol);

/**
 * Seeded random path whose delay sits well inside a sample interval
 * (fractional grid position in [0.1, 0.9]), safe for finite differencing.
 * Respects the delay bound of the given scheme.
 */
PathParams random_nonboundary_path(SplitMix64& rng, const SystemConfig& cfg, Scheme scheme);

/// Runs the cross-implementation and finite-difference suites used by the
/// CLI selfcheck; logs one line per check. Returns true when all pass.
bool selfcheck(std::ostream& log);

} // namespace ddsense::oracle
