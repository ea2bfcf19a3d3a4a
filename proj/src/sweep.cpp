#include "ddsense/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ddsense {

namespace {

using nlohmann::json;

void check_known_fields(const json& obj, const char* context,
                        std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ScenarioError("unknown field '" + item.key() + "' in " + context);
    }
}

double get_number(const json& obj, const char* context, const std::string& key) {
    if (!obj.contains(key))
        throw ScenarioError(std::string("missing field '") + key + "' in " + context);
    if (!obj[key].is_number())
        throw ScenarioError(std::string("field '") + key + "' in " + context + " must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const char* context, const std::string& key) {
    if (!obj.contains(key))
        throw ScenarioError(std::string("missing field '") + key + "' in " + context);
    if (!obj[key].is_number_integer())
        throw ScenarioError(std::string("field '") + key + "' in " + context +
                            " must be an integer");
    return obj[key].get<int>();
}

std::string join_violations(const ValidationResult& v) {
    std::string out = "validation failed:";
    for (const Violation& violation : v.violations)
        out += " [" + violation.field + "] " + violation.message + ";";
    return out;
}

struct EvalOutcome {
    CrlbReport report;
    std::string error;
};

EvalOutcome evaluate(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                     std::uint64_t pilot_seed, double target_snr_db) {
    EvalOutcome out;
    out.report.scheme = scheme;
    out.report.snr_db = target_snr_db;

    const ValidationResult v = validate_config(cfg, paths, scheme);
    if (!v.ok()) {
        out.error = join_violations(v);
        return out;
    }

    try {
        const PilotGrid pilots = generate_pilots(cfg.m, cfg.n, pilot_seed);
        const NoiseModel noise{sigma2_for_snr(scheme, cfg, paths, pilots, target_snr_db)};
        const FisherMatrix fim = assemble_fim(scheme, cfg, paths, pilots, noise);
        out.report.values = crlb(fim);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::SnrDb: return "snr_db";
    case SweepAxis::ScsHz: return "scs_hz";
    case SweepAxis::GridMn: return "grid_mn";
    }
    return "unknown";
}

SweepSpec parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ScenarioError("scenario root must be a JSON object");

    check_known_fields(root, "scenario",
                       {"schemes", "axis", "axis_values", "config", "paths", "snr_db",
                        "pilot_seed", "output_stem"});

    SweepSpec spec;

    if (!root.contains("schemes") || !root["schemes"].is_array() || root["schemes"].empty())
        throw ScenarioError("'schemes' must be a nonempty array of scheme names");
    for (const auto& s : root["schemes"]) {
        if (!s.is_string()) throw ScenarioError("'schemes' entries must be strings");
        Scheme scheme;
        try {
            scheme = scheme_from_string(s.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ScenarioError(e.what());
        }
        if (std::find(spec.schemes.begin(), spec.schemes.end(), scheme) != spec.schemes.end())
            throw ScenarioError("duplicate scheme '" + s.get<std::string>() + "'");
        spec.schemes.push_back(scheme);
    }

    if (!root.contains("config") || !root["config"].is_object())
        throw ScenarioError("'config' must be an object");
    const json& cfg = root["config"];
    check_known_fields(cfg, "config", {"m", "n", "scs_hz", "carrier_hz", "cp_duration_s"});
    spec.config.m = get_int(cfg, "config", "m");
    spec.config.n = get_int(cfg, "config", "n");
    spec.config.delta_f = get_number(cfg, "config", "scs_hz");
    spec.config.f_c = cfg.contains("carrier_hz") ? get_number(cfg, "config", "carrier_hz") : 3e9;
    if (cfg.contains("cp_duration_s")) {
        spec.config.t_cp = get_number(cfg, "config", "cp_duration_s");
        spec.t_cp_explicit = true;
    }

    if (!root.contains("paths") || !root["paths"].is_array() || root["paths"].empty())
        throw ScenarioError("'paths' must be a nonempty array");
    for (const auto& p : root["paths"]) {
        if (!p.is_object()) throw ScenarioError("'paths' entries must be objects");
        check_known_fields(p, "path", {"amplitude", "phase_rad", "delay_s", "doppler_hz"});
        PathParams path;
        path.amp = get_number(p, "path", "amplitude");
        path.phase = get_number(p, "path", "phase_rad");
        path.tau = get_number(p, "path", "delay_s");
        path.nu = get_number(p, "path", "doppler_hz");
        spec.paths.paths.push_back(path);
    }

    if (root.contains("axis")) {
        if (!root["axis"].is_string()) throw ScenarioError("'axis' must be a string");
        const std::string axis = root["axis"].get<std::string>();
        if (axis == "snr_db")
            spec.axis = SweepAxis::SnrDb;
        else if (axis == "scs_hz")
            spec.axis = SweepAxis::ScsHz;
        else if (axis == "grid_mn")
            spec.axis = SweepAxis::GridMn;
        else
            throw ScenarioError("'axis' must be one of snr_db, scs_hz, grid_mn");

        if (!root.contains("axis_values") || !root["axis_values"].is_array() ||
            root["axis_values"].empty())
            throw ScenarioError("'axis_values' must be a nonempty array when 'axis' is set");

        if (spec.axis == SweepAxis::GridMn) {
            for (const auto& v : root["axis_values"]) {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
                    !v[1].is_number_integer())
                    throw ScenarioError("grid_mn axis values must be [M, N] integer pairs");
                GridSize g{v[0].get<int>(), v[1].get<int>()};
                if (g.m < 2 || g.n < 2)
                    throw ScenarioError("grid_mn pairs require M >= 2 and N >= 2");
                spec.grid_values.push_back(g);
            }
            for (std::size_t i = 1; i < spec.grid_values.size(); ++i) {
                const long prev = long(spec.grid_values[i - 1].m) * spec.grid_values[i - 1].n;
                const long cur = long(spec.grid_values[i].m) * spec.grid_values[i].n;
                if (cur <= prev)
                    throw ScenarioError("grid_mn axis values must be strictly increasing in M*N");
            }
        } else {
            for (const auto& v : root["axis_values"]) {
                if (!v.is_number()) throw ScenarioError("axis values must be numbers");
                spec.axis_values.push_back(v.get<double>());
            }
            for (std::size_t i = 1; i < spec.axis_values.size(); ++i)
                if (spec.axis_values[i] <= spec.axis_values[i - 1])
                    throw ScenarioError("axis values must be strictly increasing");
        }
    } else if (root.contains("axis_values")) {
        throw ScenarioError("'axis_values' given without 'axis'");
    }

    if (root.contains("snr_db")) spec.snr_db = get_number(root, "scenario", "snr_db");
    if (root.contains("pilot_seed")) {
        if (!root["pilot_seed"].is_number_unsigned() && !root["pilot_seed"].is_number_integer())
            throw ScenarioError("'pilot_seed' must be a nonnegative integer");
        const auto seed = root["pilot_seed"].get<std::int64_t>();
        if (root["pilot_seed"].is_number_integer() && seed < 0)
            throw ScenarioError("'pilot_seed' must be a nonnegative integer");
        spec.pilot_seed = root["pilot_seed"].get<std::uint64_t>();
    }
    if (root.contains("output_stem")) {
        if (!root["output_stem"].is_string()) throw ScenarioError("'output_stem' must be a string");
        spec.output_stem = root["output_stem"].get<std::string>();
    }

    return spec;
}

SweepSpec load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading scenario file: " + path);
    return parse_scenario(buf.str());
}

SystemConfig point_config(const SweepSpec& spec, int axis_index) {
    SystemConfig cfg = spec.config;
    switch (spec.axis) {
    case SweepAxis::ScsHz: cfg.delta_f = spec.axis_values.at(axis_index); break;
    case SweepAxis::GridMn:
        cfg.m = spec.grid_values.at(axis_index).m;
        cfg.n = spec.grid_values.at(axis_index).n;
        break;
    case SweepAxis::SnrDb:
    case SweepAxis::None: break;
    }
    if (!spec.t_cp_explicit) cfg.t_cp = cfg.t() / 4.0; // default CP: a quarter symbol
    return cfg;
}

std::vector<PointResult> run_point(const SweepSpec& spec) {
    SweepSpec single = spec;
    single.axis = SweepAxis::None;
    const SystemConfig cfg = point_config(single, 0);

    std::vector<PointResult> results;
    for (Scheme scheme : spec.schemes) {
        const EvalOutcome out = evaluate(scheme, cfg, spec.paths, spec.pilot_seed, spec.snr_db);
        results.push_back({scheme, out.report, out.error});
    }
    return results;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    if (spec.axis == SweepAxis::None) throw ScenarioError("sweep requires an 'axis' field");
    const int count = spec.axis == SweepAxis::GridMn ? static_cast<int>(spec.grid_values.size())
                                                     : static_cast<int>(spec.axis_values.size());

    std::vector<ResultRow> rows;
    for (Scheme scheme : spec.schemes) {
        for (int i = 0; i < count; ++i) {
            const SystemConfig cfg = point_config(spec, i);
            const double snr =
                spec.axis == SweepAxis::SnrDb ? spec.axis_values[i] : spec.snr_db;
            const EvalOutcome out = evaluate(scheme, cfg, spec.paths, spec.pilot_seed, snr);

            for (int p = 0; p < spec.paths.count(); ++p) {
                ResultRow row;
                row.scheme = scheme;
                row.m = cfg.m;
                row.n = cfg.n;
                row.scs_hz = cfg.delta_f;
                row.snr_db = snr;
                row.path_index = p + 1;
                row.error = out.error;
                if (out.error.empty()) {
                    const PathCrlb& b = out.report.values.paths.at(p);
                    row.crlb_tau_s2 = b.tau_s2;
                    row.crlb_nu_hz2 = b.nu_hz2;
                    row.crlb_amp = b.amp;
                    row.crlb_phase_rad2 = b.phase_rad2;
                    row.fim_condition = out.report.values.fim_condition;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string format_sci(double v) {
    std::array<char, 64> buf;
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string csv_string(const std::vector<ResultRow>& rows) {
    std::string out = "scheme,M,N,scs_hz,snr_db,path_index,crlb_tau_s2,crlb_nu_hz2,"
                      "crlb_amp,crlb_phase_rad2,fim_condition,error\n";
    for (const ResultRow& r : rows) {
        out += std::string(to_string(r.scheme)) + ',';
        out += std::to_string(r.m) + ',';
        out += std::to_string(r.n) + ',';
        out += format_sci(r.scs_hz) + ',';
        out += format_sci(r.snr_db) + ',';
        out += std::to_string(r.path_index) + ',';
        if (r.error.empty()) {
            out += format_sci(r.crlb_tau_s2) + ',';
            out += format_sci(r.crlb_nu_hz2) + ',';
            out += format_sci(r.crlb_amp) + ',';
            out += format_sci(r.crlb_phase_rad2) + ',';
            out += format_sci(r.fim_condition) + ',';
        } else {
            out += ",,,,,";
        }
        out += csv_escape(r.error);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << csv_string(rows);
    out.flush();
    if (!out) throw IoError("error writing output file: " + path);
}

namespace {

double plot_x_value(const ResultRow& row, SweepAxis axis) {
    switch (axis) {
    case SweepAxis::SnrDb: return row.snr_db;
    case SweepAxis::ScsHz: return row.scs_hz;
    case SweepAxis::GridMn: return double(row.m) * row.n;
    case SweepAxis::None: break;
    }
    throw std::invalid_argument("emit_plot: a sweep axis is required");
}

double plot_y_value(const ResultRow& row, const std::string& y_column) {
    if (y_column == "crlb_tau_s2") return row.crlb_tau_s2;
    if (y_column == "crlb_nu_hz2") return row.crlb_nu_hz2;
    if (y_column == "crlb_amp") return row.crlb_amp;
    if (y_column == "crlb_phase_rad2") return row.crlb_phase_rad2;
    throw std::invalid_argument("emit_plot: unknown y column '" + y_column + "'");
}

void check_single_axis(const std::vector<ResultRow>& rows, SweepAxis axis) {
    // every coordinate other than the axis must be constant across rows
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const ResultRow& a = rows[0];
        const ResultRow& b = rows[i];
        const bool grid_same = a.m == b.m && a.n == b.n;
        bool ok = true;
        switch (axis) {
        case SweepAxis::SnrDb: ok = grid_same && a.scs_hz == b.scs_hz; break;
        case SweepAxis::ScsHz: ok = grid_same && a.snr_db == b.snr_db; break;
        case SweepAxis::GridMn: ok = a.scs_hz == b.scs_hz && a.snr_db == b.snr_db; break;
        case SweepAxis::None: ok = false; break;
        }
        if (!ok) throw std::invalid_argument("emit_plot: rows mix more than one sweep axis");
    }
}

std::string fmt_px(double v) {
    std::array<char, 64> buf;
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

std::string fmt_tick(double v) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

} // namespace

void emit_plot(const std::vector<ResultRow>& rows, SweepAxis axis, const std::string& svg_path,
               const std::string& y_column) {
    check_single_axis(rows, axis);

    // series keyed by (scheme, path), in first-appearance order
    struct Series {
        std::string label;
        std::vector<std::pair<double, double>> points;
    };
    std::vector<std::pair<std::pair<int, int>, Series>> series;
    std::vector<double> xs; // distinct axis values, in appearance order

    for (const ResultRow& row : rows) {
        const double x = plot_x_value(row, axis);
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        if (!row.error.empty()) continue;
        const double y = plot_y_value(row, y_column);
        if (!(y > 0.0) || !std::isfinite(y)) continue; // log axis
        const std::pair<int, int> key{static_cast<int>(row.scheme), row.path_index};
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const auto& s) { return s.first == key; });
        if (it == series.end()) {
            std::string label = std::string(to_string(row.scheme)) + " path " +
                                std::to_string(row.path_index);
            series.push_back({key, {std::move(label), {}}});
            it = std::prev(series.end());
        }
        it->second.points.push_back({x, y});
    }
    if (series.empty() || xs.empty())
        throw std::invalid_argument("emit_plot: no plottable rows");

    double x_min = xs[0], x_max = xs[0];
    double y_min = 0.0, y_max = 0.0;
    bool first_y = true;
    for (double x : xs) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
    }
    for (const auto& s : series)
        for (const auto& [x, y] : s.second.points) {
            if (first_y) {
                y_min = y_max = y;
                first_y = false;
            }
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (x_max == x_min) x_max = x_min + 1.0;
    const int dec_lo = static_cast<int>(std::floor(std::log10(y_min)));
    const int dec_hi = static_cast<int>(std::ceil(std::log10(y_max)));
    const double ly_lo = dec_lo, ly_hi = std::max<double>(dec_hi, dec_lo + 1);

    // geometry
    const double width = 900, height = 540;
    const double left = 90, right = width - 240, top = 30, bottom = height - 60;
    auto px = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    };
    auto py = [&](double y) {
        const double ly = std::log10(y);
        return bottom - (ly - ly_lo) / (ly_hi - ly_lo) * (bottom - top);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_tick(width) +
           "\" height=\"" + fmt_tick(height) + "\" viewBox=\"0 0 " + fmt_tick(width) + " " +
           fmt_tick(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // horizontal decade gridlines and labels
    for (int d = static_cast<int>(ly_lo); d <= static_cast<int>(ly_hi); ++d) {
        const double y = py(std::pow(10.0, d));
        svg += "<line x1=\"" + fmt_px(left) + "\" y1=\"" + fmt_px(y) + "\" x2=\"" + fmt_px(right) +
               "\" y2=\"" + fmt_px(y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + fmt_px(left - 8) + "\" y=\"" + fmt_px(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" +
               std::to_string(d) + "</text>\n";
    }
    // x ticks at the axis values
    for (double x : xs) {
        const double xp = px(x);
        svg += "<line x1=\"" + fmt_px(xp) + "\" y1=\"" + fmt_px(bottom) + "\" x2=\"" + fmt_px(xp) +
               "\" y2=\"" + fmt_px(bottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_px(xp) + "\" y=\"" + fmt_px(bottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt_tick(x) + "</text>\n";
    }
    // frame
    svg += "<line x1=\"" + fmt_px(left) + "\" y1=\"" + fmt_px(top) + "\" x2=\"" + fmt_px(left) +
           "\" y2=\"" + fmt_px(bottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt_px(left) + "\" y1=\"" + fmt_px(bottom) + "\" x2=\"" +
           fmt_px(right) + "\" y2=\"" + fmt_px(bottom) + "\" stroke=\"black\"/>\n";
    // axis labels
    svg += "<text x=\"" + fmt_px((left + right) / 2) + "\" y=\"" + fmt_px(height - 15) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           std::string(to_string(axis)) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt_px((top + bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
           fmt_px((top + bottom) / 2) + ")\">" + y_column + "</text>\n";

    // series polylines and legend
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % palette.size()];
        std::string pts;
        for (const auto& [x, y] : series[s].second.points) {
            if (!pts.empty()) pts += ' ';
            pts += fmt_px(px(x)) + "," + fmt_px(py(y));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.8\" points=\"" + pts + "\"/>\n";
        for (const auto& [x, y] : series[s].second.points)
            svg += "<circle cx=\"" + fmt_px(px(x)) + "\" cy=\"" + fmt_px(py(y)) +
                   "\" r=\"2.6\" fill=\"" + std::string(color) + "\"/>\n";

        const double ly = top + 18 + 20.0 * s;
        svg += "<line x1=\"" + fmt_px(right + 14) + "\" y1=\"" + fmt_px(ly - 4) + "\" x2=\"" +
               fmt_px(right + 40) + "\" y2=\"" + fmt_px(ly - 4) + "\" stroke=\"" +
               std::string(color) + "\" stroke-width=\"1.8\"/>\n";
        svg += "<text x=\"" + fmt_px(right + 46) + "\" y=\"" + fmt_px(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + series[s].second.label +
               "</text>\n";
    }
    svg += "</svg>\n";

    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + svg_path);
    out << svg;
    out.flush();
    if (!out) throw IoError("error writing output file: " + svg_path);

    // sibling whitespace-separated table for external plotters
    std::string dat_path = svg_path;
    if (const auto dot = dat_path.find_last_of('.'); dot != std::string::npos)
        dat_path.resize(dot);
    dat_path += ".dat";

    std::string dat = "# " + std::string(to_string(axis));
    for (const auto& s : series) {
        std::string col = s.second.label;
        std::replace(col.begin(), col.end(), ' ', '_');
        dat += " " + col;
    }
    dat += "\n";
    for (double x : xs) {
        dat += format_sci(x);
        for (const auto& s : series) {
            const auto& pts = s.second.points;
            const auto it = std::find_if(pts.begin(), pts.end(),
                                         [&](const auto& p) { return p.first == x; });
            dat += " ";
            dat += it == pts.end() ? "nan" : format_sci(it->second);
        }
        dat += "\n";
    }
    std::ofstream dat_out(dat_path, std::ios::binary);
    if (!dat_out) throw IoError("cannot open output file: " + dat_path);
    dat_out << dat;
    dat_out.flush();
    if (!dat_out) throw IoError("error writing output file: " + dat_path);
}

} // namespace ddsense
