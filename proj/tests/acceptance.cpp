// Acceptance suite: one pass/fail line per criterion, nonzero exit code if
// any criterion fails. Run via ctest or directly:
//
//   ./build/tests/acceptance
//
// The trend criteria (5-8) evaluate the figure-recipe operating points; the
// property criteria (1-4) run the derivative, oracle-equivalence, identity,
// and Fisher-matrix suites at desk scale.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ddsense/channel_ofdm.hpp"
#include "ddsense/channel_otfs.hpp"
#include "ddsense/fim.hpp"
#include "ddsense/oracle.hpp"
#include "ddsense/sweep.hpp"

using namespace ddsense;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& label, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

SystemConfig desk_config(int m, int n, double scs = 15e3) {
    SystemConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.delta_f = scs;
    cfg.f_c = 3e9;
    cfg.t_cp = cfg.t() / 4.0;
    return cfg;
}

PathSet fig3_paths() {
    PathSet set;
    set.paths.push_back({0.7, std::numbers::pi / 3.0, 3.33e-6, 500.0});
    set.paths.push_back({0.3, 3.0 * std::numbers::pi / 4.0, 5e-6, 2.5e3});
    return set;
}

double rel_frob(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).norm() / b.norm();
}

// 1. analytic derivatives vs central differences, 1e-6, 10 configs each
void criterion_derivatives() {
    const auto start = std::chrono::steady_clock::now();
    const SystemConfig cfg = desk_config(8, 8);

    double worst = 0.0;
    std::string worst_label;
    for (Scheme scheme : all_schemes)
        for (Param which : all_params) {
            SplitMix64 rng(101 + 7 * static_cast<std::uint64_t>(scheme) +
                           static_cast<std::uint64_t>(which));
            for (int trial = 0; trial < 10; ++trial) {
                const PathParams path = oracle::random_nonboundary_path(rng, cfg, scheme);
                const Eigen::MatrixXcd analytic =
                    build_derivative(scheme, cfg, path, which).entries;
                const Eigen::MatrixXcd fd = oracle::fd_derivative(scheme, cfg, path, which);
                const double err = rel_frob(fd, analytic);
                if (err > worst) {
                    worst = err;
                    worst_label = std::string(to_string(scheme)) + "/" +
                                  std::string(to_string(which));
                }
            }
        }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream detail;
    detail << "worst rel err " << worst << " (" << worst_label << "), " << seconds << " s";
    report(1, worst <= 1e-6 && seconds < 30.0,
           "analytic derivatives match central differences (4 schemes x 4 params x 10 configs)",
           detail.str());
}

// 2. fast builders vs element-wise oracle, 1e-12, 20 configs per scheme
void criterion_oracle_equivalence() {
    const SystemConfig cfg = desk_config(8, 8);
    double worst = 0.0;
    for (Scheme scheme : all_schemes) {
        SplitMix64 rng(577 + static_cast<std::uint64_t>(scheme));
        for (int trial = 0; trial < 20; ++trial) {
            const PathParams path = oracle::random_nonboundary_path(rng, cfg, scheme);
            worst = std::max(worst, rel_frob(build_channel(scheme, cfg, path).entries,
                                             oracle::elementwise_channel(scheme, cfg, path)));
        }
    }
    std::ostringstream detail;
    detail << "worst rel err " << worst;
    report(2, worst <= 1e-12, "fast builders equal the element-wise oracle (20 configs/scheme)",
           detail.str());
}

// 3. identity cases
void criterion_identities() {
    bool pass = true;
    std::ostringstream detail;

    {
        const SystemConfig cfg = desk_config(2, 2);
        const Eigen::MatrixXcd psi = build_cpfree(cfg, {1.0, 0.0, 0.0, 0.0}).entries;
        const double err =
            (psi - std::numbers::sqrt2 * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff();
        pass = pass && err < 1e-12;
        detail << "cp_free sqrt(2)*I err " << err;
    }
    {
        const SystemConfig cfg = desk_config(12, 12);
        const Eigen::MatrixXcd psi = build_cpofdm(cfg, {1.0, 0.0, 0.0, 0.0}).entries;
        const double err =
            (psi - std::sqrt(12.0) * Eigen::MatrixXcd::Identity(144, 144)).cwiseAbs().maxCoeff();
        pass = pass && err < 1e-12;
        detail << ", cp_ofdm sqrt(M)*I err " << err;
    }
    {
        const SystemConfig cfg = desk_config(12, 12);
        const Eigen::MatrixXcd psi = build_zak(cfg, {1.0, 0.0, 0.0, 0.0}).entries;
        const double err =
            (psi - 12.0 * Eigen::MatrixXcd::Identity(144, 144)).cwiseAbs().maxCoeff();
        pass = pass && err < 1e-12;
        detail << ", zak sqrt(MN)*I err " << err;
    }
    {
        const SystemConfig cfg = desk_config(12, 12);
        const Eigen::MatrixXcd psi = build_twostep(cfg, {1.0, 0.0, 0.0, 0.0}).entries;
        const double err = (psi - Eigen::MatrixXcd::Identity(144, 144)).cwiseAbs().maxCoeff();
        pass = pass && err < 1e-12;
        detail << ", two_step I err " << err;
    }
    report(3, pass, "identity cases for all four schemes", detail.str());
}

// 4. Fisher matrix properties
void criterion_fim_properties() {
    const SystemConfig cfg = desk_config(8, 8);
    PathSet paths;
    paths.paths.push_back({0.9, 0.3, 0.6 * cfg.t() / cfg.m, 420.0});
    paths.paths.push_back({0.5, 2.1, 1.4 * cfg.t() / cfg.m, -800.0});
    const PilotGrid pilots = generate_pilots(cfg.m, cfg.n, 42);

    bool pass = true;
    std::ostringstream detail;
    double worst_fd = 0.0, worst_scale = 0.0, worst_slope = 0.0;

    for (Scheme scheme : all_schemes) {
        const FisherMatrix j = assemble_fim(scheme, cfg, paths, pilots, {1.0});

        if (j.entries != j.entries.transpose().eval()) {
            pass = false;
            detail << to_string(scheme) << ": FIM not exactly symmetric. ";
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j.entries);
        if (eig.eigenvalues().minCoeff() < -1e-9 * j.entries.trace()) {
            pass = false;
            detail << to_string(scheme) << ": FIM indefinite. ";
        }

        const FisherMatrix numeric = oracle::numeric_fim(scheme, cfg, paths, pilots, {1.0});
        worst_fd = std::max(worst_fd,
                            (numeric.entries - j.entries).norm() / j.entries.norm());

        // noise scaling and the -1 log-log slope vs SNR
        const CrlbValues base = crlb(j);
        const CrlbValues scaled = crlb(assemble_fim(scheme, cfg, paths, pilots, {3.0}));
        const CrlbValues decade = crlb(assemble_fim(scheme, cfg, paths, pilots, {0.1}));
        for (int p = 0; p < 2; ++p) {
            worst_scale = std::max(
                worst_scale, std::abs(scaled.paths[p].tau_s2 / base.paths[p].tau_s2 - 3.0) / 3.0);
            worst_scale = std::max(
                worst_scale, std::abs(scaled.paths[p].nu_hz2 / base.paths[p].nu_hz2 - 3.0) / 3.0);
            worst_slope = std::max(worst_slope,
                                   std::abs(base.paths[p].tau_s2 / decade.paths[p].tau_s2 - 10.0) /
                                       10.0);
            worst_slope = std::max(worst_slope,
                                   std::abs(base.paths[p].nu_hz2 / decade.paths[p].nu_hz2 - 10.0) /
                                       10.0);
        }
    }
    pass = pass && worst_fd <= 1e-5 && worst_scale <= 1e-10 && worst_slope <= 1e-10;
    detail << "numeric-vs-analytic rel err " << worst_fd << ", noise-scaling err " << worst_scale
           << ", snr-slope err " << worst_slope;
    report(4, pass, "FIM symmetry, PSD, FD agreement, noise scaling, -1 SNR slope",
           detail.str());
}

struct TrendPoint {
    double tau;
    double nu;
};

TrendPoint bounds_at(Scheme scheme, const SystemConfig& cfg, const PathSet& paths, double snr,
                     int path_index) {
    const PilotGrid pilots = generate_pilots(cfg.m, cfg.n, 42);
    const NoiseModel noise{sigma2_for_snr(scheme, cfg, paths, pilots, snr)};
    const CrlbValues v = crlb(assemble_fim(scheme, cfg, paths, pilots, noise));
    return {v.paths[path_index].tau_s2, v.paths[path_index].nu_hz2};
}

// 5. delay bound falls and Doppler bound rises with SCS
void criterion_scs_trend() {
    PathSet paths;
    paths.paths.push_back({1.0, 0.0, 3.33e-6, 500.0});

    bool pass = true;
    std::ostringstream detail;
    for (Scheme scheme : all_schemes) {
        TrendPoint prev{};
        bool first = true;
        for (double scs : {15e3, 30e3, 60e3}) {
            const TrendPoint cur = bounds_at(scheme, desk_config(12, 12, scs), paths, 10.0, 0);
            if (!first) {
                if (!(cur.tau < prev.tau)) {
                    pass = false;
                    detail << to_string(scheme) << ": crlb_tau not decreasing in SCS. ";
                }
                if (!(cur.nu > prev.nu)) {
                    pass = false;
                    detail << to_string(scheme) << ": crlb_nu not increasing in SCS. ";
                }
            }
            prev = cur;
            first = false;
        }
    }
    report(5, pass, "SCS sweep 15/30/60 kHz: crlb_tau strictly down, crlb_nu strictly up",
           detail.str());
}

// 6. both bounds fall with the grid size
void criterion_grid_trend() {
    PathSet paths;
    paths.paths.push_back({1.0, 0.0, 3.33e-6, 500.0});

    bool pass = true;
    std::ostringstream detail;
    for (Scheme scheme : all_schemes) {
        TrendPoint prev{};
        bool first = true;
        for (int mn : {6, 12, 24}) {
            const TrendPoint cur = bounds_at(scheme, desk_config(mn, mn), paths, 10.0, 0);
            if (!first && !(cur.tau < prev.tau && cur.nu < prev.nu)) {
                pass = false;
                detail << to_string(scheme) << ": bounds not decreasing at M=N=" << mn << ". ";
            }
            prev = cur;
            first = false;
        }
    }
    report(6, pass, "grid sweep (6,6)->(12,12)->(24,24): both bounds strictly down",
           detail.str());
}

// 7. the stronger path has the lower bounds
void criterion_path_ordering() {
    const SystemConfig cfg = desk_config(12, 12);
    const PathSet paths = fig3_paths();

    bool pass = true;
    std::ostringstream detail;
    for (Scheme scheme : all_schemes) {
        const TrendPoint p1 = bounds_at(scheme, cfg, paths, 10.0, 0);
        const TrendPoint p2 = bounds_at(scheme, cfg, paths, 10.0, 1);
        if (!(p1.tau < p2.tau && p1.nu < p2.nu)) {
            pass = false;
            detail << to_string(scheme) << ": path 1 not below path 2. ";
        }
    }
    report(7, pass, "two-path scenario at 10 dB: path 1 bounds below path 2", detail.str());
}

// 8. both OTFS schemes beat both OFDM schemes in the two-path scenario.
// This encodes a comparative claim from the literature; when the bounds
// computed from the closed forms contradict it, the suite must flag the
// discrepancy loudly instead of passing silently.
void criterion_scheme_ordering() {
    const SystemConfig cfg = desk_config(12, 12);
    const PathSet paths = fig3_paths();

    TrendPoint worst_otfs{0.0, 0.0}, best_ofdm{0.0, 0.0};
    bool first_otfs = true, first_ofdm = true;
    std::ostringstream detail;
    for (Scheme scheme : all_schemes) {
        // compare on the stronger path
        const TrendPoint b = bounds_at(scheme, cfg, paths, 10.0, 0);
        detail << to_string(scheme) << " tau " << b.tau << " nu " << b.nu << "; ";
        const bool otfs = scheme == Scheme::ZakOtfs || scheme == Scheme::TwoStepOtfs;
        if (otfs) {
            worst_otfs.tau = first_otfs ? b.tau : std::max(worst_otfs.tau, b.tau);
            worst_otfs.nu = first_otfs ? b.nu : std::max(worst_otfs.nu, b.nu);
            first_otfs = false;
        } else {
            best_ofdm.tau = first_ofdm ? b.tau : std::min(best_ofdm.tau, b.tau);
            best_ofdm.nu = first_ofdm ? b.nu : std::min(best_ofdm.nu, b.nu);
            first_ofdm = false;
        }
    }
    const bool pass = worst_otfs.tau < best_ofdm.tau && worst_otfs.nu < best_ofdm.nu;
    if (!pass) {
        detail << "FLAGGED: with the received-power-equalized SNR definition the four "
                  "schemes give nearly identical bounds, so the claimed OTFS dominance does "
                  "not emerge. Criteria 1-4 (derivative, oracle-equivalence, identity, FIM "
                  "evidence) pass, so this is a property of the closed forms under this SNR "
                  "convention, not an arithmetic defect. Under a common-sigma2 convention "
                  "the ordering also fails (the Zak and two-step receiver normalizations "
                  "then dominate the comparison in opposite directions).";
    }
    report(8, pass, "both OTFS schemes below both OFDM schemes on tau and nu bounds",
           detail.str());
}

// 9. the two-path recipe emits byte-identical CSV on repeated runs
void criterion_determinism() {
    const std::string recipe = std::string(DDSENSE_SCENARIO_DIR) + "/fig3.json";
    bool pass = false;
    std::string detail;
    try {
        const SweepSpec spec = load_scenario(recipe);
        const std::string a = csv_string(run_sweep(spec));
        const std::string b = csv_string(run_sweep(load_scenario(recipe)));

        const auto tmp = std::filesystem::temp_directory_path();
        emit_csv(run_sweep(spec), (tmp / "ddsense_accept_a.csv").string());
        emit_csv(run_sweep(spec), (tmp / "ddsense_accept_b.csv").string());
        std::ifstream fa(tmp / "ddsense_accept_a.csv", std::ios::binary);
        std::ifstream fb(tmp / "ddsense_accept_b.csv", std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        std::filesystem::remove(tmp / "ddsense_accept_a.csv");
        std::filesystem::remove(tmp / "ddsense_accept_b.csv");

        pass = !a.empty() && a == b && sa.str() == sb.str() && sa.str() == a;
        detail = std::to_string(a.size()) + " bytes";
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(9, pass, "two runs of the fig3 recipe produce byte-identical CSV", detail);
}

// 10. the full fig1 sweep finishes in under ten seconds
void criterion_performance() {
    const std::string recipe = std::string(DDSENSE_SCENARIO_DIR) + "/fig1.json";
    bool pass = false;
    std::string detail;
    try {
        const SweepSpec spec = load_scenario(recipe);
        const auto start = std::chrono::steady_clock::now();
        const auto rows = run_sweep(spec);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        pass = seconds < 10.0 && rows.size() == 12;
        detail = std::to_string(seconds) + " s for " + std::to_string(rows.size()) + " rows";
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(10, pass, "full fig1 sweep (4 schemes x 3 SCS) under 10 s", detail);
}

} // namespace

int main() {
    criterion_derivatives();
    criterion_oracle_equivalence();
    criterion_identities();
    criterion_fim_properties();
    criterion_scs_trend();
    criterion_grid_trend();
    criterion_path_ordering();
    criterion_scheme_ordering();
    criterion_determinism();
    criterion_performance();

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
