#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ddsense/types.hpp"

namespace ddsense {

/**
 * Grid and carrier configuration shared by all four modem models.
 *
 * The symbol duration T is always 1/delta_f and is never stored, so
 * T * delta_f == 1 holds exactly. t_cp only matters for CP-OFDM.
 */
struct SystemConfig {
    int m = 12;            // subcarriers / delay bins
    int n = 12;            // symbols / Doppler bins
    double delta_f = 15e3; // subcarrier spacing [Hz]
    double f_c = 3e9;      // carrier frequency [Hz]
    double t_cp = 0.0;     // CP duration [s], CP-OFDM only

    double t() const { return 1.0 / delta_f; }        // symbol duration
    double t_prime() const { return t() + t_cp; }     // CP-OFDM symbol duration
    double bandwidth() const { return m * delta_f; }
    int grid_size() const { return m * n; }
};

/// One propagation path: gain a*e^{j*phi}, delay tau [s], Doppler nu [Hz].
struct PathParams {
    double amp = 1.0;
    double phase = 0.0;
    double tau = 0.0;
    double nu = 0.0;

    std::complex<double> gain() const { return std::polar(amp, phase); }
};

struct PathSet {
    std::vector<PathParams> paths;

    int count() const { return static_cast<int>(paths.size()); }
};

/// Unit-modulus pilot symbols, row n occupies entries n*M .. n*M+M-1.
struct PilotGrid {
    int m = 0;
    int n = 0;
    Eigen::VectorXcd x;
};

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * Checks a configuration and path set against the assumptions of the given
 * scheme. Never throws; returns the list of violated bounds instead.
 */
ValidationResult validate_config(const SystemConfig& cfg, const PathSet& paths, Scheme scheme);

/**
 * splitmix64 generator, bit-exact across platforms. Used for pilot
 * generation and seeded test configurations.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/**
 * Deterministic unit-modulus QPSK pilots. Each grid entry consumes one
 * 64-bit word w; bit 63 selects the real sign, bit 62 the imaginary sign,
 * and the symbol is ((1-2*b0) + j*(1-2*b1))/sqrt(2).
 */
PilotGrid generate_pilots(int m, int n, std::uint64_t seed);

/// Packs paths into the flat vector [a_0, phi_0, tau_0, nu_0, a_1, ...].
Eigen::VectorXd pack_params(const PathSet& paths);

/// Inverse of pack_params. Throws std::invalid_argument on a length mismatch.
PathSet unpack_params(const Eigen::VectorXd& theta, int path_count);

/// Flat index of parameter `which` of path `path_index` in the packed vector.
inline int param_index(int path_index, Param which) {
    return 4 * path_index + static_cast<int>(which);
}

} // namespace ddsense
