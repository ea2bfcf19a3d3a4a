// ddsense command line front end: single-point CRLB tables, parameter
// sweeps with CSV/SVG output, and the oracle self-check suite.
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure
// (singular FIM in single-point mode), 3 I/O failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddsense/oracle.hpp"
#include "ddsense/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

int run_crlb(const std::string& scenario_path, std::optional<std::uint64_t> seed) {
    ddsense::SweepSpec spec = ddsense::load_scenario(scenario_path);
    if (seed) spec.pilot_seed = *seed;

    // fail fast on configuration violations before touching any numerics
    bool valid = true;
    const ddsense::SystemConfig cfg = ddsense::point_config(spec, 0);
    for (ddsense::Scheme scheme : spec.schemes) {
        const auto result = ddsense::validate_config(cfg, spec.paths, scheme);
        for (const auto& v : result.violations) {
            std::cerr << to_string(scheme) << ": " << v.field << ": " << v.message << "\n";
            valid = false;
        }
    }
    if (!valid) return kExitValidation;

    const auto results = ddsense::run_point(spec);

    std::printf("%-14s %-5s %-13s %-13s %-13s %-13s %-10s\n", "scheme", "path", "crlb_tau_s2",
                "crlb_nu_hz2", "crlb_amp", "crlb_phase", "fim_cond");
    bool numerical_failure = false;
    for (const auto& r : results) {
        if (!r.error.empty()) {
            std::printf("%-14s %s\n", std::string(to_string(r.scheme)).c_str(), r.error.c_str());
            numerical_failure = true;
            continue;
        }
        const auto& v = r.report.values;
        for (std::size_t p = 0; p < v.paths.size(); ++p)
            std::printf("%-14s %-5zu %-13.6e %-13.6e %-13.6e %-13.6e %-10.3e\n",
                        std::string(to_string(r.scheme)).c_str(), p + 1, v.paths[p].tau_s2,
                        v.paths[p].nu_hz2, v.paths[p].amp, v.paths[p].phase_rad2,
                        v.fim_condition);
    }
    std::printf("(snr = %.6g dB, pilot seed = %llu)\n", spec.snr_db,
                static_cast<unsigned long long>(spec.pilot_seed));
    return numerical_failure ? kExitNumerical : kExitOk;
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& out_dir, bool plot,
                  std::optional<std::uint64_t> seed) {
    ddsense::SweepSpec spec = ddsense::load_scenario(scenario_path);
    if (seed) spec.pilot_seed = *seed;

    std::string stem = spec.output_stem;
    if (stem.empty()) stem = std::filesystem::path(scenario_path).stem().string();

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << out_dir << ": " << ec.message() << "\n";
        return kExitIo;
    }

    const auto rows = ddsense::run_sweep(spec);
    const std::string csv_path = (std::filesystem::path(out_dir) / (stem + ".csv")).string();
    ddsense::emit_csv(rows, csv_path);
    std::cout << "wrote " << csv_path << " (" << rows.size() << " rows)\n";

    if (plot) {
        for (const char* column : {"crlb_tau_s2", "crlb_nu_hz2"}) {
            const std::string svg_path =
                (std::filesystem::path(out_dir) / (stem + "_" + column + ".svg")).string();
            ddsense::emit_plot(rows, spec.axis, svg_path, column);
            std::cout << "wrote " << svg_path << "\n";
        }
    }

    int failed = 0;
    for (const auto& row : rows)
        if (!row.error.empty()) ++failed;
    if (failed > 0)
        std::cout << failed << " of " << rows.size() << " rows carry an error (see CSV)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delay-Doppler estimation bounds for OFDM and OTFS modems"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir;
    bool plot = false;
    std::optional<std::uint64_t> seed;

    auto* crlb_cmd = app.add_subcommand("crlb", "evaluate one operating point, print a table");
    crlb_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    crlb_cmd->add_option("--seed", seed, "override the pilot seed");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep, write CSV (and SVG with --plot)");
    sweep_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory")->required();
    sweep_cmd->add_flag("--plot", plot, "also write SVG charts and .dat tables");
    sweep_cmd->add_option("--seed", seed, "override the pilot seed");

    auto* selfcheck_cmd =
        app.add_subcommand("selfcheck", "run oracle equivalence and derivative suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (crlb_cmd->parsed()) return run_crlb(scenario_path, seed);
        if (sweep_cmd->parsed()) return run_sweep_cmd(scenario_path, out_dir, plot, seed);
        if (selfcheck_cmd->parsed())
            return ddsense::oracle::selfcheck(std::cout) ? kExitOk : kExitValidation;
    } catch (const ddsense::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ddsense::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ddsense::SingularFimError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
