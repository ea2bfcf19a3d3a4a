#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddsense/core.hpp"
#include "ddsense/fim.hpp"
#include "ddsense/types.hpp"

namespace ddsense {

enum class SweepAxis {
    None, // single operating point
    SnrDb,
    ScsHz,
    GridMn,
};

std::string_view to_string(SweepAxis axis);

struct GridSize {
    int m = 0;
    int n = 0;
};

/**
 * One evaluation campaign: a set of schemes, a fixed base configuration,
 * and one axis being swept. Loaded from a JSON scenario file.
 */
struct SweepSpec {
    std::vector<Scheme> schemes;
    SweepAxis axis = SweepAxis::None;
    std::vector<double> axis_values;  // snr_db / scs_hz axes
    std::vector<GridSize> grid_values; // grid_mn axis
    SystemConfig config;
    bool t_cp_explicit = false; // false: CP duration defaults to T/4 per point
    PathSet paths;
    double snr_db = 10.0; // operating SNR when the axis is not SNR
    std::uint64_t pilot_seed = 42;
    std::string output_stem;
};

/// Scenario file cannot be parsed or violates the scenario contract.
class ScenarioError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses scenario JSON text. Unknown fields are rejected.
SweepSpec parse_scenario(const std::string& json_text);

/// Reads and parses a scenario file.
SweepSpec load_scenario(const std::string& path);

/// Effective config at one sweep point (applies axis value and CP default).
SystemConfig point_config(const SweepSpec& spec, int axis_index);

struct PointResult {
    Scheme scheme{};
    CrlbReport report;
    std::string error; // nonempty means report is not meaningful
};

/// Evaluates the scenario's base operating point for every scheme. A
/// failing scheme yields an error entry; the others still complete.
std::vector<PointResult> run_point(const SweepSpec& spec);

/// One CSV row: a single path of a single scheme at one axis value.
struct ResultRow {
    Scheme scheme{};
    int m = 0;
    int n = 0;
    double scs_hz = 0.0;
    double snr_db = 0.0;
    int path_index = 0; // 1-based, matching the usual path numbering
    double crlb_tau_s2 = 0.0;
    double crlb_nu_hz2 = 0.0;
    double crlb_amp = 0.0;
    double crlb_phase_rad2 = 0.0;
    double fim_condition = 0.0;
    std::string error;
};

/**
 * Runs the full cross product schemes x axis values x paths in that
 * deterministic order. Per-point failures are recorded in the error
 * column; the sweep always completes.
 */
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Shortest round-trip scientific formatting used by all emitters.
std::string format_sci(double v);

/// CSV serialization (fixed header, LF endings, empty cells on error rows).
std::string csv_string(const std::vector<ResultRow>& rows);

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

/**
 * Self-contained SVG line chart of one CRLB column versus the sweep axis,
 * log-scale y, one series per (scheme, path). Also writes a sibling
 * whitespace-separated .dat file for external plotters. y_column is one of
 * crlb_tau_s2, crlb_nu_hz2, crlb_amp, crlb_phase_rad2.
 */
void emit_plot(const std::vector<ResultRow>& rows, SweepAxis axis, const std::string& svg_path,
               const std::string& y_column);

} // namespace ddsense
