#pragma once

// Shared fixtures for the test binaries: the reference configurations used
// throughout the suites and a few small matrix predicates.

#include <numbers>

#include <Eigen/Dense>

#include "ddsense/core.hpp"

namespace testutil {

inline ddsense::SystemConfig fig_config(int m = 12, int n = 12, double scs = 15e3) {
    ddsense::SystemConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.delta_f = scs;
    cfg.f_c = 3e9;
    cfg.t_cp = cfg.t() / 4.0;
    return cfg;
}

inline ddsense::PathParams path1() { return {0.7, std::numbers::pi / 3.0, 3.33e-6, 500.0}; }
inline ddsense::PathParams path2() { return {0.3, 3.0 * std::numbers::pi / 4.0, 5e-6, 2.5e3}; }

inline ddsense::PathSet two_path_set() {
    ddsense::PathSet set;
    set.paths.push_back(path1());
    set.paths.push_back(path2());
    return set;
}

inline double rel_frobenius(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).norm() / b.norm();
}

inline double rel_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / b.norm();
}

inline double max_abs_diff_from_scaled_identity(const Eigen::MatrixXcd& m, double scale) {
    const Eigen::MatrixXcd expected =
        scale * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return (m - expected).cwiseAbs().maxCoeff();
}

} // namespace testutil
