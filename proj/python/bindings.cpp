#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ddsense/channel.hpp"
#include "ddsense/core.hpp"
#include "ddsense/fim.hpp"
#include "ddsense/oracle.hpp"
#include "ddsense/sweep.hpp"

namespace py = pybind11;
using namespace ddsense;

namespace {

PathSet to_path_set(const std::vector<PathParams>& paths) {
    PathSet set;
    set.paths = paths;
    return set;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "delay-Doppler estimation bounds for OFDM and OTFS modems";

    py::enum_<Scheme>(m, "Scheme")
        .value("CP_FREE_OFDM", Scheme::CpFreeOfdm)
        .value("CP_OFDM", Scheme::CpOfdm)
        .value("ZAK_OTFS", Scheme::ZakOtfs)
        .value("TWO_STEP_OTFS", Scheme::TwoStepOtfs);

    py::enum_<Param>(m, "Param")
        .value("AMP", Param::Amp)
        .value("PHASE", Param::Phase)
        .value("TAU", Param::Tau)
        .value("NU", Param::Nu);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](int m_, int n_, double scs_hz, double carrier_hz, double cp_duration_s) {
                 SystemConfig cfg;
                 cfg.m = m_;
                 cfg.n = n_;
                 cfg.delta_f = scs_hz;
                 cfg.f_c = carrier_hz;
                 cfg.t_cp = cp_duration_s;
                 return cfg;
             }),
             py::arg("m"), py::arg("n"), py::arg("scs_hz"), py::arg("carrier_hz") = 3e9,
             py::arg("cp_duration_s") = 0.0)
        .def_readonly("m", &SystemConfig::m)
        .def_readonly("n", &SystemConfig::n)
        .def_readonly("scs_hz", &SystemConfig::delta_f)
        .def_readonly("carrier_hz", &SystemConfig::f_c)
        .def_readonly("cp_duration_s", &SystemConfig::t_cp)
        .def_property_readonly("symbol_duration_s", &SystemConfig::t)
        .def("__repr__", [](const SystemConfig& c) {
            std::ostringstream os;
            os << "SystemConfig(m=" << c.m << ", n=" << c.n << ", scs_hz=" << c.delta_f
               << ", carrier_hz=" << c.f_c << ", cp_duration_s=" << c.t_cp << ")";
            return os.str();
        });

    py::class_<PathParams>(m, "PathParams")
        .def(py::init([](double amplitude, double phase_rad, double delay_s, double doppler_hz) {
                 return PathParams{amplitude, phase_rad, delay_s, doppler_hz};
             }),
             py::arg("amplitude"), py::arg("phase_rad"), py::arg("delay_s"),
             py::arg("doppler_hz"))
        .def_readonly("amplitude", &PathParams::amp)
        .def_readonly("phase_rad", &PathParams::phase)
        .def_readonly("delay_s", &PathParams::tau)
        .def_readonly("doppler_hz", &PathParams::nu)
        .def("__repr__", [](const PathParams& p) {
            std::ostringstream os;
            os << "PathParams(amplitude=" << p.amp << ", phase_rad=" << p.phase
               << ", delay_s=" << p.tau << ", doppler_hz=" << p.nu << ")";
            return os.str();
        });

    py::class_<PilotGrid>(m, "PilotGrid")
        .def_readonly("m", &PilotGrid::m)
        .def_readonly("n", &PilotGrid::n)
        .def_readonly("x", &PilotGrid::x);

    py::class_<PathCrlb>(m, "PathCrlb")
        .def_readonly("amp", &PathCrlb::amp)
        .def_readonly("phase_rad2", &PathCrlb::phase_rad2)
        .def_readonly("tau_s2", &PathCrlb::tau_s2)
        .def_readonly("nu_hz2", &PathCrlb::nu_hz2);

    py::class_<CrlbValues>(m, "CrlbValues")
        .def_readonly("paths", &CrlbValues::paths)
        .def_readonly("fim_condition", &CrlbValues::fim_condition);

    py::register_exception<SingularFimError>(m, "SingularFimError", PyExc_ArithmeticError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

    m.def(
        "validate_config",
        [](const SystemConfig& cfg, const std::vector<PathParams>& paths, Scheme scheme) {
            std::vector<std::string> out;
            for (const Violation& v : validate_config(cfg, to_path_set(paths), scheme).violations)
                out.push_back(v.field + ": " + v.message);
            return out;
        },
        py::arg("config"), py::arg("paths"), py::arg("scheme"),
        "Returns the list of violated bounds (empty when the scenario is valid).");

    m.def("generate_pilots", &generate_pilots, py::arg("m"), py::arg("n"), py::arg("seed"),
          "Deterministic unit-modulus QPSK pilot grid.");

    m.def(
        "build_channel",
        [](Scheme scheme, const SystemConfig& cfg, const PathParams& path) {
            return build_channel(scheme, cfg, path).entries;
        },
        py::arg("scheme"), py::arg("config"), py::arg("path"),
        "Dense MN x MN single-path channel matrix.");

    m.def(
        "build_derivative",
        [](Scheme scheme, const SystemConfig& cfg, const PathParams& path, Param which) {
            return build_derivative(scheme, cfg, path, which).entries;
        },
        py::arg("scheme"), py::arg("config"), py::arg("path"), py::arg("which"),
        "Analytic parameter derivative of the channel matrix.");

    m.def(
        "received_signal",
        [](Scheme scheme, const SystemConfig& cfg, const std::vector<PathParams>& paths,
           const PilotGrid& pilots) {
            return received_signal(scheme, cfg, to_path_set(paths), pilots);
        },
        py::arg("scheme"), py::arg("config"), py::arg("paths"), py::arg("pilots"));

    m.def(
        "snr_db",
        [](Scheme scheme, const SystemConfig& cfg, const std::vector<PathParams>& paths,
           const PilotGrid& pilots, double sigma2) {
            return snr_db(scheme, cfg, to_path_set(paths), pilots, {sigma2});
        },
        py::arg("scheme"), py::arg("config"), py::arg("paths"), py::arg("pilots"),
        py::arg("sigma2"));

    m.def(
        "sigma2_for_snr",
        [](Scheme scheme, const SystemConfig& cfg, const std::vector<PathParams>& paths,
           const PilotGrid& pilots, double target_snr_db) {
            return sigma2_for_snr(scheme, cfg, to_path_set(paths), pilots, target_snr_db);
        },
        py::arg("scheme"), py::arg("config"), py::arg("paths"), py::arg("pilots"),
        py::arg("snr_db"));

    m.def(
        "assemble_fim",
        [](Scheme scheme, const SystemConfig& cfg, const std::vector<PathParams>& paths,
           const PilotGrid& pilots, double sigma2) {
            return assemble_fim(scheme, cfg, to_path_set(paths), pilots, {sigma2}).entries;
        },
        py::arg("scheme"), py::arg("config"), py::arg("paths"), py::arg("pilots"),
        py::arg("sigma2"), "Fisher information matrix over [amp, phase, tau, nu] per path.");

    m.def(
        "crlb",
        [](const Eigen::MatrixXd& fim) { return crlb(FisherMatrix{fim}); }, py::arg("fim"),
        "Per-path bounds from the inverse Fisher matrix diagonal.");

    m.def(
        "crlb_report",
        [](Scheme scheme, const SystemConfig& cfg, const std::vector<PathParams>& paths,
           std::uint64_t pilot_seed, double snr_db_target) {
            const PathSet set = to_path_set(paths);
            const PilotGrid pilots = generate_pilots(cfg.m, cfg.n, pilot_seed);
            const NoiseModel noise{sigma2_for_snr(scheme, cfg, set, pilots, snr_db_target)};
            return crlb(assemble_fim(scheme, cfg, set, pilots, noise));
        },
        py::arg("scheme"), py::arg("config"), py::arg("paths"), py::arg("pilot_seed") = 42,
        py::arg("snr_db") = 10.0,
        "End-to-end bounds at a target SNR with deterministic pilots.");

    // verification oracles
    m.def(
        "elementwise_channel",
        [](Scheme scheme, const SystemConfig& cfg, const PathParams& path) {
            return oracle::elementwise_channel(scheme, cfg, path);
        },
        py::arg("scheme"), py::arg("config"), py::arg("path"),
        "Independent element-wise channel builder (slow, for cross-checks).");

    m.def(
        "fd_derivative",
        [](Scheme scheme, const SystemConfig& cfg, const PathParams& path, Param which,
           double step) { return oracle::fd_derivative(scheme, cfg, path, which, step); },
        py::arg("scheme"), py::arg("config"), py::arg("path"), py::arg("which"),
        py::arg("step") = 0.0, "Central-difference derivative of the channel builder.");

    // scenario pipeline
    py::class_<SweepSpec>(m, "SweepSpec")
        .def_readwrite("pilot_seed", &SweepSpec::pilot_seed)
        .def_readwrite("snr_db", &SweepSpec::snr_db)
        .def_readonly("schemes", &SweepSpec::schemes)
        .def_readonly("output_stem", &SweepSpec::output_stem);

    py::class_<ResultRow>(m, "ResultRow")
        .def_property_readonly("scheme",
                               [](const ResultRow& r) { return std::string(to_string(r.scheme)); })
        .def_readonly("m", &ResultRow::m)
        .def_readonly("n", &ResultRow::n)
        .def_readonly("scs_hz", &ResultRow::scs_hz)
        .def_readonly("snr_db", &ResultRow::snr_db)
        .def_readonly("path_index", &ResultRow::path_index)
        .def_readonly("crlb_tau_s2", &ResultRow::crlb_tau_s2)
        .def_readonly("crlb_nu_hz2", &ResultRow::crlb_nu_hz2)
        .def_readonly("crlb_amp", &ResultRow::crlb_amp)
        .def_readonly("crlb_phase_rad2", &ResultRow::crlb_phase_rad2)
        .def_readonly("fim_condition", &ResultRow::fim_condition)
        .def_readonly("error", &ResultRow::error);

    m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("run_sweep", &run_sweep, py::arg("spec"));
    m.def("csv_string", &csv_string, py::arg("rows"));
    m.def("emit_csv", &emit_csv, py::arg("rows"), py::arg("path"));

#ifdef DDSENSE_VERSION
    m.attr("__version__") = DDSENSE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
