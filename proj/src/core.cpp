#include "ddsense/core.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace ddsense {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

ValidationResult validate_config(const SystemConfig& cfg, const PathSet& paths, Scheme scheme) {
    ValidationResult r;
    auto add = [&r](std::string field, std::string msg) {
        r.violations.push_back({std::move(field), std::move(msg)});
    };

    if (cfg.m < 2) add("m", "M >= 2 required, got " + std::to_string(cfg.m));
    if (cfg.n < 2) add("n", "N >= 2 required, got " + std::to_string(cfg.n));
    if (!(cfg.delta_f > 0.0)) add("delta_f", "delta_f > 0 required, got " + fmt(cfg.delta_f));
    if (cfg.t_cp < 0.0) add("t_cp", "T_cp >= 0 required, got " + fmt(cfg.t_cp));
    if (!(cfg.f_c >= 0.0)) add("f_c", "f_c >= 0 required, got " + fmt(cfg.f_c));
    if (!r.violations.empty()) return r; // path bounds need a sane T

    if (paths.count() < 1) add("paths", "at least one path required");

    const double T = cfg.t();
    for (int p = 0; p < paths.count(); ++p) {
        const PathParams& path = paths.paths[p];
        const std::string tag = "paths[" + std::to_string(p) + "].";
        if (!(path.amp > 0.0))
            add(tag + "amp", "a > 0 required (zero-amplitude path makes the FIM singular)");
        if (path.phase < 0.0 || path.phase >= 2.0 * std::numbers::pi)
            add(tag + "phase", "phi in [0, 2*pi) required, got " + fmt(path.phase));
        if (path.tau < 0.0) add(tag + "tau", "tau >= 0 required, got " + fmt(path.tau));

        switch (scheme) {
        case Scheme::CpFreeOfdm:
        case Scheme::ZakOtfs:
        case Scheme::TwoStepOtfs:
            if (path.tau >= T)
                add(tag + "tau", "tau < T required (tau=" + fmt(path.tau) + ", T=" + fmt(T) + ")");
            break;
        case Scheme::CpOfdm:
            if (path.tau > cfg.t_cp)
                add(tag + "tau",
                    "tau <= T_cp required (tau=" + fmt(path.tau) + ", T_cp=" + fmt(cfg.t_cp) + ")");
            break;
        }
    }

    // identical (tau, nu) pairs are unidentifiable
    std::set<std::pair<double, double>> seen;
    for (int p = 0; p < paths.count(); ++p) {
        auto key = std::make_pair(paths.paths[p].tau, paths.paths[p].nu);
        if (!seen.insert(key).second)
            add("paths[" + std::to_string(p) + "]",
                "duplicate (tau, nu) pair; paths must be distinct");
    }

    return r;
}

PilotGrid generate_pilots(int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("generate_pilots: M, N >= 1 required");

    PilotGrid grid;
    grid.m = m;
    grid.n = n;
    grid.x.resize(static_cast<Eigen::Index>(m) * n);

    const double s = 1.0 / std::numbers::sqrt2;
    SplitMix64 rng(seed);
    for (Eigen::Index i = 0; i < grid.x.size(); ++i) {
        const std::uint64_t w = rng.next();
        const double re = ((w >> 63) & 1u) ? -s : s;
        const double im = ((w >> 62) & 1u) ? -s : s;
        grid.x[i] = {re, im};
    }
    return grid;
}

Eigen::VectorXd pack_params(const PathSet& paths) {
    Eigen::VectorXd theta(4 * paths.count());
    for (int p = 0; p < paths.count(); ++p) {
        const PathParams& path = paths.paths[p];
        theta[4 * p + 0] = path.amp;
        theta[4 * p + 1] = path.phase;
        theta[4 * p + 2] = path.tau;
        theta[4 * p + 3] = path.nu;
    }
    return theta;
}

PathSet unpack_params(const Eigen::VectorXd& theta, int path_count) {
    if (theta.size() % 4 != 0)
        throw std::invalid_argument("unpack_params: length must be divisible by 4, got " +
                                    std::to_string(theta.size()));
    if (theta.size() != 4 * static_cast<Eigen::Index>(path_count))
        throw std::invalid_argument("unpack_params: expected length " +
                                    std::to_string(4 * path_count) + ", got " +
                                    std::to_string(theta.size()));

    PathSet set;
    set.paths.resize(path_count);
    for (int p = 0; p < path_count; ++p) {
        set.paths[p].amp = theta[4 * p + 0];
        set.paths[p].phase = theta[4 * p + 1];
        set.paths[p].tau = theta[4 * p + 2];
        set.paths[p].nu = theta[4 * p + 3];
    }
    return set;
}

} // namespace ddsense
