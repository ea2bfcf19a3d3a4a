"""Delay-Doppler estimation bounds for OFDM and OTFS modems.

Thin python layer over the C++ core: channel matrix builders for the four
modem models, analytic derivatives, Fisher information assembly, CRLB
extraction, and the scenario sweep pipeline.
"""

from ._core import (
    CrlbValues,
    Param,
    PathCrlb,
    PathParams,
    PilotGrid,
    ResultRow,
    ScenarioError,
    Scheme,
    SingularFimError,
    SweepSpec,
    SystemConfig,
    __version__,
    assemble_fim,
    build_channel,
    build_derivative,
    crlb,
    crlb_report,
    csv_string,
    elementwise_channel,
    emit_csv,
    fd_derivative,
    generate_pilots,
    load_scenario,
    parse_scenario,
    received_signal,
    run_sweep,
    sigma2_for_snr,
    snr_db,
    validate_config,
)

__all__ = [
    "CrlbValues",
    "Param",
    "PathCrlb",
    "PathParams",
    "PilotGrid",
    "ResultRow",
    "ScenarioError",
    "Scheme",
    "SingularFimError",
    "SweepSpec",
    "SystemConfig",
    "__version__",
    "assemble_fim",
    "build_channel",
    "build_derivative",
    "crlb",
    "crlb_report",
    "csv_string",
    "elementwise_channel",
    "emit_csv",
    "fd_derivative",
    "generate_pilots",
    "load_scenario",
    "parse_scenario",
    "received_signal",
    "run_sweep",
    "sigma2_for_snr",
    "snr_db",
    "validate_config",
]
