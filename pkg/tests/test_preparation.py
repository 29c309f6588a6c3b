import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rspsim.linalg import bloch_from_rho, purity
from rspsim.preparation import (
    UM,
    CoherenceModel,
    PreparationSettings,
    calibrated_phase_resolution,
    cycle_step_visibility,
    phase_resolution,
    prepare_input,
    tilted_plate_opd,
    visibility,
)

MODEL = CoherenceModel()


def gaussian(dl_um, fwhm_um=15.0):
    return math.exp(-4 * math.log(2) * dl_um**2 / fwhm_um**2)


def test_visibility_examples():
    assert visibility(0.0) == 1.0
    v = visibility(14 * UM)
    assert v == pytest.approx(gaussian(14.0), rel=1e-12)
    assert v == pytest.approx(0.0893, abs=5e-4)
    assert abs(v - 0.1) <= 0.02
    assert visibility(7.5 * UM) == pytest.approx(0.5, abs=1e-12)


@given(st.floats(-60, 60), st.floats(-60, 60))
def test_visibility_even_and_monotone(a, b):
    va, vb = visibility(a * UM), visibility(b * UM)
    assert visibility(-a * UM) == va
    if abs(a) <= abs(b):
        assert va >= vb


def test_cycle_steps():
    assert cycle_step_visibility(0) == 1.0
    vs = np.array([cycle_step_visibility(n) for n in range(60)])
    assert np.all(np.diff(vs) <= 0)
    # brute-force scan of step differences
    max_step = max(abs(gaussian(0.81 * (n + 1)) - gaussian(0.81 * n)) for n in range(200))
    assert np.max(np.abs(np.diff(vs))) == pytest.approx(max_step, abs=1e-12)
    assert 0.05 <= max_step <= 0.09
    assert cycle_step_visibility(17) == pytest.approx(gaussian(17 * 0.81), rel=1e-12)
    assert cycle_step_visibility(17) == pytest.approx(0.09, abs=0.01)
    with pytest.raises(ValueError):
        cycle_step_visibility(-1)


def test_coherence_model_validation():
    with pytest.raises(ValueError):
        CoherenceModel(wavelength=-1.0)
    with pytest.raises(ValueError):
        CoherenceModel(shape="lorentzian")


def test_prepare_input_examples():
    rho = prepare_input(PreparationSettings(0.0, 1.234))
    assert np.allclose(rho, np.diag([1, 0]))
    p = bloch_from_rho(prepare_input(PreparationSettings(np.pi / 2, 0.0))).as_array()
    assert p == pytest.approx([0, -1, 0], abs=1e-15)
    far = PreparationSettings(np.pi / 2, 0.7, path_mismatch=1e-3)
    assert far.visibility == 0.0
    assert np.allclose(prepare_input(far), np.eye(2) / 2)


def test_prepare_input_matches_displayed_entries():
    d1, d2, dl = 0.9, 2.1, 5 * UM
    v = gaussian(5.0)
    rho = prepare_input(PreparationSettings(d1, d2, dl))
    assert rho[0, 0] == pytest.approx((1 + v * math.cos(d1)) / 2)
    assert rho[1, 1] == pytest.approx((1 - v * math.cos(d1)) / 2)
    assert rho[0, 1] == pytest.approx(1j * np.exp(-1j * d2) * v * math.sin(d1) / 2)
    assert rho[1, 0] == pytest.approx(-1j * np.exp(1j * d2) * v * math.sin(d1) / 2)


def test_purity_law_random_settings(rng):
    for _ in range(1000):
        s = PreparationSettings(rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(-30, 30) * UM)
        rho = prepare_input(s)
        v = s.visibility
        assert abs(purity(rho) - (1 + v * v) / 2) <= 1e-12
        assert abs(bloch_from_rho(rho).norm - v) <= 1e-12


def test_sweep_planes():
    v = visibility(4 * UM)
    for phi in np.linspace(0, 2 * np.pi, 25):
        p = bloch_from_rho(prepare_input(PreparationSettings(phi, 0.0, 4 * UM))).as_array()
        assert p[0] == pytest.approx(0, abs=1e-15)
        assert np.hypot(p[1], p[2]) == pytest.approx(v, abs=1e-12)
        q = bloch_from_rho(prepare_input(PreparationSettings(np.pi / 2, phi, 4 * UM))).as_array()
        assert q[2] == pytest.approx(0, abs=1e-15)
        assert np.hypot(q[0], q[1]) == pytest.approx(v, abs=1e-12)


def test_real_superposition_at_quarter_cycle_output_phase():
    p = bloch_from_rho(prepare_input(PreparationSettings(np.pi / 2, np.pi / 2))).as_array()
    assert p == pytest.approx([1, 0, 0], abs=1e-15)


def test_quantized_phases():
    step = 2 * np.pi / 180
    s = PreparationSettings(0.3, 0.0, phase_step=step)
    exact = PreparationSettings(round(0.3 / step) * step, 0.0)
    assert np.allclose(prepare_input(s), prepare_input(exact))


def test_calibrated_phase_resolution():
    rad, frac = calibrated_phase_resolution(1.0, 180.0)
    assert rad == pytest.approx(2 * np.pi / 180)
    assert frac == pytest.approx(1 / 180)
    assert calibrated_phase_resolution(0.0)[0] == 0.0
    # lambda/300 as a phase
    assert 2 * np.pi / 300 == pytest.approx(0.021, abs=5e-4)


def test_tilted_plate_phase():
    assert tilted_plate_opd(1e-3, 0.0) == 0.0
    assert phase_resolution(1e-3, 0.0, offset_tilt=0.2) == (0.0, 0.0)
    # small-angle limit: OPD ~ t * theta^2 (n - 1) / (2 n)
    t, n, th = 1e-3, 1.5106, 1e-3
    assert tilted_plate_opd(t, th, n) == pytest.approx(t * th**2 * (n - 1) / (2 * n), rel=1e-5)
    # finite-difference derivative consistency
    step = np.deg2rad(0.01)
    rad, frac = phase_resolution(1e-3, step, offset_tilt=np.deg2rad(10))
    h = 1e-7
    d = (tilted_plate_opd(1e-3, np.deg2rad(10) + h) - tilted_plate_opd(1e-3, np.deg2rad(10) - h)) / (2 * h)
    assert frac == pytest.approx(d * step / (0.810 * UM), rel=1e-3)
    assert rad == pytest.approx(2 * np.pi * frac)
    with pytest.raises(ValueError):
        phase_resolution(-1.0, 0.1)
