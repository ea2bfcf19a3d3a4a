"""Smoke tests for the python bindings: identity cases, determinism, and a
small end-to-end sweep. The heavy numerical suites live in the C++ tests."""

import math

import numpy as np
import pytest

import ddsense


@pytest.fixture
def cfg():
    return ddsense.SystemConfig(m=8, n=8, scs_hz=15e3, cp_duration_s=1.0 / 15e3 / 4.0)


def test_pilots_are_deterministic_and_unit_modulus():
    a = ddsense.generate_pilots(8, 8, 42)
    b = ddsense.generate_pilots(8, 8, 42)
    assert np.array_equal(a.x, b.x)
    assert np.allclose(np.abs(a.x), 1.0)
    assert a.x.shape == (64,)


def test_identity_channels(cfg):
    flat = ddsense.PathParams(amplitude=1.0, phase_rad=0.0, delay_s=0.0, doppler_hz=0.0)
    zak = ddsense.build_channel(ddsense.Scheme.ZAK_OTFS, cfg, flat)
    assert np.allclose(zak, math.sqrt(64.0) * np.eye(64), atol=1e-12)
    two_step = ddsense.build_channel(ddsense.Scheme.TWO_STEP_OTFS, cfg, flat)
    assert np.allclose(two_step, np.eye(64), atol=1e-12)


def test_derivative_matches_finite_difference(cfg):
    path = ddsense.PathParams(amplitude=0.8, phase_rad=0.4, delay_s=1.4e-6, doppler_hz=700.0)
    analytic = ddsense.build_derivative(ddsense.Scheme.ZAK_OTFS, cfg, path, ddsense.Param.TAU)
    fd = ddsense.fd_derivative(ddsense.Scheme.ZAK_OTFS, cfg, path, ddsense.Param.TAU)
    assert np.linalg.norm(fd - analytic) / np.linalg.norm(analytic) < 1e-6


def test_fast_builder_matches_elementwise_oracle(cfg):
    path = ddsense.PathParams(amplitude=0.7, phase_rad=1.0, delay_s=2.2e-6, doppler_hz=400.0)
    for scheme in (ddsense.Scheme.CP_FREE_OFDM, ddsense.Scheme.CP_OFDM,
                   ddsense.Scheme.ZAK_OTFS, ddsense.Scheme.TWO_STEP_OTFS):
        fast = ddsense.build_channel(scheme, cfg, path)
        ref = ddsense.elementwise_channel(scheme, cfg, path)
        assert np.linalg.norm(fast - ref) / np.linalg.norm(ref) < 1e-12


def test_crlb_report_positive_bounds(cfg):
    paths = [ddsense.PathParams(amplitude=1.0, phase_rad=0.0, delay_s=2.2e-6, doppler_hz=500.0)]
    report = ddsense.crlb_report(ddsense.Scheme.ZAK_OTFS, cfg, paths, pilot_seed=42, snr_db=10.0)
    assert len(report.paths) == 1
    bounds = report.paths[0]
    assert bounds.tau_s2 > 0.0
    assert bounds.nu_hz2 > 0.0
    assert bounds.amp > 0.0
    assert bounds.phase_rad2 > 0.0


def test_singular_fim_raises(cfg):
    paths = [
        ddsense.PathParams(amplitude=0.7, phase_rad=0.1, delay_s=2.2e-6, doppler_hz=500.0),
        ddsense.PathParams(amplitude=0.7, phase_rad=0.1, delay_s=2.2e-6, doppler_hz=500.0),
    ]
    pilots = ddsense.generate_pilots(cfg.m, cfg.n, 42)
    fim = ddsense.assemble_fim(ddsense.Scheme.ZAK_OTFS, cfg, paths, pilots, 1.0)
    with pytest.raises(ddsense.SingularFimError):
        ddsense.crlb(fim)


def test_validate_config_flags_bad_delay(cfg):
    paths = [ddsense.PathParams(amplitude=1.0, phase_rad=0.0,
                                delay_s=cfg.symbol_duration_s, doppler_hz=0.0)]
    violations = ddsense.validate_config(cfg, paths, ddsense.Scheme.ZAK_OTFS)
    assert any("tau < T" in v for v in violations)


def test_scenario_sweep_round_trip():
    spec = ddsense.parse_scenario("""
    {
      "schemes": ["zak_otfs", "cp_ofdm"],
      "axis": "snr_db",
      "axis_values": [0, 10, 20],
      "config": {"m": 8, "n": 8, "scs_hz": 15000},
      "paths": [{"amplitude": 1.0, "phase_rad": 0.0, "delay_s": 3.33e-6, "doppler_hz": 500.0}]
    }
    """)
    rows = ddsense.run_sweep(spec)
    assert len(rows) == 6
    for row in rows:
        assert row.error == ""
        assert row.crlb_tau_s2 > 0.0
    # bounds shrink as snr grows
    zak = [r for r in rows if r.scheme == "zak_otfs"]
    assert zak[0].crlb_tau_s2 > zak[1].crlb_tau_s2 > zak[2].crlb_tau_s2

    text = ddsense.csv_string(rows)
    assert text.splitlines()[0].startswith("scheme,M,N,scs_hz,snr_db,path_index")
    assert len(text.splitlines()) == 7

    with pytest.raises(ddsense.ScenarioError):
        ddsense.parse_scenario('{"schemes": [], "mystery": 1}')
