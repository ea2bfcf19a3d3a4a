#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ddsense/core.hpp"

using namespace ddsense;

namespace {

SystemConfig fig_config() {
    SystemConfig cfg;
    cfg.m = 12;
    cfg.n = 12;
    cfg.delta_f = 15e3;
    cfg.f_c = 3e9;
    cfg.t_cp = cfg.t() / 4.0;
    return cfg;
}

PathSet single_path(double amp, double phase, double tau, double nu) {
    PathSet set;
    set.paths.push_back({amp, phase, tau, nu});
    return set;
}

bool mentions(const ValidationResult& r, const std::string& needle) {
    for (const auto& v : r.violations)
        if (v.field.find(needle) != std::string::npos ||
            v.message.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("validate_config accepts the reference single-path scenario") {
    const auto r = validate_config(fig_config(), single_path(1.0, 0.0, 3.33e-6, 500.0),
                                   Scheme::ZakOtfs);
    CHECK(r.ok());
}

TEST_CASE("validate_config flags delay at the symbol boundary") {
    SystemConfig cfg = fig_config();
    const auto r = validate_config(cfg, single_path(1.0, 0.0, cfg.t(), 500.0), Scheme::ZakOtfs);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "tau < T"));
}

TEST_CASE("validate_config flags a CP shorter than the delay") {
    SystemConfig cfg = fig_config();
    cfg.t_cp = 4e-6;
    const auto r = validate_config(cfg, single_path(1.0, 0.0, 5e-6, 500.0), Scheme::CpOfdm);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "tau <= T_cp"));
}

TEST_CASE("validate_config flags degenerate grids, amplitudes, duplicates") {
    SystemConfig cfg = fig_config();
    cfg.m = 1;
    CHECK(mentions(validate_config(cfg, single_path(1, 0, 0, 0), Scheme::CpOfdm), "M >= 2"));

    CHECK(mentions(validate_config(fig_config(), single_path(0.0, 0.0, 1e-6, 100.0),
                                   Scheme::ZakOtfs),
                   "a > 0"));

    PathSet dup = single_path(1.0, 0.0, 1e-6, 100.0);
    dup.paths.push_back({0.5, 1.0, 1e-6, 100.0}); // same (tau, nu)
    CHECK(mentions(validate_config(fig_config(), dup, Scheme::ZakOtfs), "duplicate"));
}

TEST_CASE("validate_config accepts every figure-recipe operating point") {
    // single path, SCS sweep values
    for (double scs : {15e3, 30e3, 60e3}) {
        SystemConfig cfg = fig_config();
        cfg.delta_f = scs;
        cfg.t_cp = cfg.t() / 4.0;
        for (Scheme scheme : all_schemes)
            CHECK(validate_config(cfg, single_path(1.0, 0.0, 3.33e-6, 500.0), scheme).ok());
    }
    // grid sweep values
    for (int mn : {6, 12, 24}) {
        SystemConfig cfg = fig_config();
        cfg.m = mn;
        cfg.n = mn;
        for (Scheme scheme : all_schemes)
            CHECK(validate_config(cfg, single_path(1.0, 0.0, 3.33e-6, 500.0), scheme).ok());
    }
    // two-path scenario
    PathSet two = single_path(0.7, std::numbers::pi / 3.0, 3.33e-6, 500.0);
    two.paths.push_back({0.3, 3.0 * std::numbers::pi / 4.0, 5e-6, 2.5e3});
    for (Scheme scheme : all_schemes) CHECK(validate_config(fig_config(), two, scheme).ok());
}

TEST_CASE("splitmix64 reference outputs") {
    SplitMix64 rng(42);
    CHECK(rng.next() == 0xbdd732262feb6e95ULL);
    CHECK(rng.next() == 0x28efe333b266f103ULL);
}

TEST_CASE("pilots are unit-modulus and deterministic") {
    const PilotGrid a = generate_pilots(2, 2, 42);
    const PilotGrid b = generate_pilots(2, 2, 42);
    REQUIRE(a.x.size() == 4);
    for (Eigen::Index i = 0; i < a.x.size(); ++i) {
        CHECK(a.x[i] == b.x[i]);
        CHECK(std::abs(std::abs(a.x[i]) - 1.0) < 1e-15);
    }

    // first word of splitmix64(42) has bits 63,62 = 1,0
    const double s = 1.0 / std::numbers::sqrt2;
    CHECK(a.x[0] == std::complex<double>(-s, s));

    const PilotGrid c = generate_pilots(12, 12, 7);
    for (Eigen::Index i = 0; i < c.x.size(); ++i)
        CHECK(std::abs(std::abs(c.x[i]) - 1.0) < 1e-15);
}

TEST_CASE("pilot grid is balanced at the reference seed") {
    const PilotGrid g = generate_pilots(12, 12, 42);
    std::complex<double> mean = 0.0;
    double mean_mod = 0.0;
    for (Eigen::Index i = 0; i < g.x.size(); ++i) {
        mean += g.x[i];
        mean_mod += std::abs(g.x[i]);
    }
    mean /= double(g.x.size());
    mean_mod /= double(g.x.size());
    CHECK(mean_mod == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mean) < 0.3);
}

TEST_CASE("pack/unpack round trip") {
    PathSet set = single_path(0.7, std::numbers::pi / 3.0, 3.33e-6, 500.0);
    const Eigen::VectorXd theta = pack_params(set);
    REQUIRE(theta.size() == 4);
    CHECK(theta[0] == 0.7);
    CHECK(theta[1] == std::numbers::pi / 3.0);
    CHECK(theta[2] == 3.33e-6);
    CHECK(theta[3] == 500.0);

    SplitMix64 rng(9);
    PathSet random;
    for (int p = 0; p < 3; ++p)
        random.paths.push_back({rng.next_double(), rng.next_double(), rng.next_double() * 1e-6,
                                rng.next_double() * 1e3});
    const PathSet back = unpack_params(pack_params(random), 3);
    REQUIRE(back.count() == 3);
    for (int p = 0; p < 3; ++p) {
        CHECK(back.paths[p].amp == random.paths[p].amp);
        CHECK(back.paths[p].phase == random.paths[p].phase);
        CHECK(back.paths[p].tau == random.paths[p].tau);
        CHECK(back.paths[p].nu == random.paths[p].nu);
    }
}

TEST_CASE("unpack rejects malformed lengths") {
    CHECK_THROWS_AS((void)unpack_params(Eigen::VectorXd::Zero(7), 2), std::invalid_argument);
    CHECK_THROWS_AS((void)unpack_params(Eigen::VectorXd::Zero(8), 1), std::invalid_argument);
}
