#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ddsense/channel.hpp"
#include "ddsense/core.hpp"
#include "ddsense/types.hpp"

namespace ddsense {

/// AWGN with covariance sigma2 * I over the MN received samples.
struct NoiseModel {
    double sigma2 = 1.0;
};

/// Real symmetric 4P x 4P Fisher information, ordered like pack_params.
struct FisherMatrix {
    Eigen::MatrixXd entries;

    int path_count() const { return static_cast<int>(entries.rows() / 4); }
};

/// Per-path Cramer-Rao bounds, diagonal of the inverse Fisher matrix.
struct PathCrlb {
    double amp = 0.0;
    double phase_rad2 = 0.0;
    double tau_s2 = 0.0;
    double nu_hz2 = 0.0;
};

struct CrlbValues {
    std::vector<PathCrlb> paths;
    double fim_condition = 0.0; // condition of the preconditioned FIM
};

/// Full evaluation result for one scheme at one operating point.
struct CrlbReport {
    Scheme scheme{};
    double snr_db = 0.0;
    CrlbValues values;
};

/// Raised when the Fisher matrix cannot be inverted meaningfully.
class SingularFimError : public std::runtime_error {
public:
    SingularFimError(const std::string& what, double condition, double eigenvalue)
        : std::runtime_error(what), condition_estimate(condition), offending_eigenvalue(eigenvalue) {}

    double condition_estimate;
    double offending_eigenvalue;
};

/// Noiseless received vector sum_p Psi^p x.
Eigen::VectorXcd received_signal(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                                 const PilotGrid& pilots);

/// 10*log10(mean received per-sample power / sigma2).
double snr_db(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
              const PilotGrid& pilots, const NoiseModel& noise);

/// Noise variance that realizes the target SNR for this scheme and pilots.
double sigma2_for_snr(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                      const PilotGrid& pilots, double target_snr_db);

/**
 * Fisher information for the stacked parameter vector:
 *   J[i][j] = (2/sigma2) * Re{ (dPsi/dtheta_j x)^H (dPsi/dtheta_i x) }.
 * Each theta_i involves only the matrix of the path owning it. Symmetry is
 * exact by construction (each unordered pair is computed once).
 */
FisherMatrix assemble_fim(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                          const PilotGrid& pilots, const NoiseModel& noise);

struct CrlbOptions {
    bool precondition = true; // scale to unit diagonal before factorizing
};

/**
 * Inverts the Fisher matrix and maps its inverse diagonal back to named
 * per-path bounds. Delay/Doppler/amplitude/phase entries differ by many
 * orders of magnitude, so the matrix is scaled to unit diagonal before the
 * Cholesky factorization and the result is scaled back. Throws
 * SingularFimError if the (scaled) matrix is indefinite or numerically
 * singular.
 */
CrlbValues crlb(const FisherMatrix& fim, const CrlbOptions& options = {});

} // namespace ddsense
