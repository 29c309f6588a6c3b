"""Exit criteria for the simulator, one test per criterion.

Each test prints a single ``ACnn PASS|FAIL`` line (visible without ``-s``).
"""
import time

import numpy as np
import pytest

from rspsim.cli import main
from rspsim.elements import ResourceModel, bell_phi_minus, pauli, realize_resource
from rspsim.experiments import ExperimentConfig, favg_limit, sweep_phi1
from rspsim.linalg import fidelity, ket, projector, purity
from rspsim.preparation import UM, PreparationSettings, prepare_input, visibility
from rspsim.protocol import OUTCOME_LABELS, ProtocolConfig, channel_of, run_protocol
from rspsim.randomstates import random_density
from rspsim.tomography import (
    avg_fidelity,
    channel_from_chi,
    chsh,
    classical_baseline,
    process_tomography,
)


@pytest.fixture
def report(capsys):
    def _report(n, name, ok, detail):
        with capsys.disabled():
            print(f"\nAC{n:02d} {'PASS' if ok else 'FAIL'} {name}: {detail}")
        assert ok, detail

    return _report


def test_ac01_purity_law(report):
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        s = PreparationSettings(rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(-40, 40) * UM)
        v = s.visibility
        worst = max(worst, abs(purity(prepare_input(s)) - (1 + v * v) / 2))
    dt = time.perf_counter() - t0
    report(1, "purity law", worst <= 1e-12 and dt < 1.0, f"max dev {worst:.2e}, {dt:.3f}s")


def test_ac02_visibility_point(report):
    v = visibility(14 * UM)
    p = purity(prepare_input(PreparationSettings(np.pi / 2, 0.0, 14 * UM)))
    ok = 0.07 <= v <= 0.11 and 0.5025 <= p <= 0.506
    report(2, "V=0.1 point", ok, f"V={v:.4f}, purity={p:.5f}")


def test_ac03_exact_teleportation(report):
    rng = np.random.default_rng(3)
    states = [projector(ket(s)) for s in "HVDARL"] + [random_density(2, rng) for _ in range(100)]
    t0 = time.perf_counter()
    dp = df = 0.0
    for rho in states:
        for o in run_protocol(rho):
            dp = max(dp, abs(o.probability - 0.25))
            df = max(df, abs(fidelity(o.corrected_state, rho) - 1))
    dt = time.perf_counter() - t0
    report(3, "exact teleportation", dp <= 1e-12 and df <= 1e-12 and dt < 1.0, f"prob dev {dp:.1e}, fid dev {df:.1e}, {dt:.3f}s")


def test_ac04_correction_map(report):
    probes = [projector(ket(s)) for s in "HVDR"]
    found = {}
    for label in OUTCOME_LABELS:
        for p in "IXYZ":
            c = pauli(p)
            if all(
                fidelity(c @ next(o for o in run_protocol(r) if o.label == label).bob_state @ c.conj().T, r) > 1 - 1e-12
                for r in probes
            ):
                found.setdefault(label, []).append(p)
    expected = {"0H": ["I"], "1H": ["Z"], "0V": ["Y"], "1V": ["X"]}
    report(4, "correction map", found == expected, str(found))


def test_ac05_favg_formula(report):
    chi = np.diag([0.92, 0.04, 0.02, 0.02]).astype(complex)
    f = avg_fidelity(chi)
    exact = (2 * 0.92 + 1) / 3
    ok = abs(f - exact) <= 1e-12 and round(f, 4) == 0.9467 and round(f, 2) == 0.95
    report(5, "F_AV formula", ok, f"F_AV={f:.12f}")


def test_ac06_qpt_round_trip(report):
    t0 = time.perf_counter()
    err_id = np.max(np.abs(process_tomography(lambda r: r) - np.diag([1, 0, 0, 0])))
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        chi_true = np.diag(rng.dirichlet(np.ones(4))).astype(complex)
        worst = max(worst, np.max(np.abs(process_tomography(channel_from_chi(chi_true)) - chi_true)))
    dt = time.perf_counter() - t0
    ok = err_id <= 1e-10 and worst <= 1e-10 and dt < 5.0
    report(6, "process tomography round trip", ok, f"identity err {err_id:.1e}, mixtures err {worst:.1e}, {dt:.2f}s")


def test_ac07_resource_limited_fidelity(report):
    t0 = time.perf_counter()
    _, s = favg_limit(ExperimentConfig("favg-limit", resource="werner-fid:0.945", samples=10_000, seed=7))
    chi_favg = avg_fidelity(process_tomography(channel_of(ProtocolConfig(ResourceModel.werner_from_fidelity(0.945)), "0H")))
    dt = time.perf_counter() - t0
    oracle = (2 * 0.945 + 1) / 3
    mc = s["favg_mc"]
    ok = abs(mc - oracle) <= 0.005 and abs(chi_favg - mc) <= 1e-3 and mc < 0.97 and chi_favg < 0.97 and dt < 30
    report(7, "resource-limited F_AV", ok, f"MC={mc:.5f}, qpt={chi_favg:.5f}, oracle={oracle:.5f}, {dt:.1f}s")


def test_ac08_classical_bound(report):
    t0 = time.perf_counter()
    f = classical_baseline(100_000, seed=8)
    dt = time.perf_counter() - t0
    report(8, "classical bound", abs(f - 2 / 3) <= 0.005 and dt < 10, f"F={f:.5f}, {dt:.2f}s")


def test_ac09_chsh(report):
    s_ideal = chsh(bell_phi_minus())
    devs = [abs(s_ideal - 2 * np.sqrt(2))]
    for p in (0.5, 0.9267, 1.0):
        devs.append(abs(chsh(realize_resource(ResourceModel.werner(p))) - 2 * np.sqrt(2) * p))
    report(9, "CHSH", max(devs) <= 1e-9, f"S_ideal={s_ideal:.12f}, max dev {max(devs):.1e}")


def test_ac10_trajectory_statistics(report):
    t0 = time.perf_counter()
    table, s = sweep_phi1(ExperimentConfig("sweep-phi1", mode="counts", rate=600.0, duration=10.0, grid=24, seed=10))
    dt = time.perf_counter() - t0
    ok = len(table.rows) == 24 and abs(s["mean"]) <= 0.05 and s["sd"] <= 0.1 and dt < 60
    report(10, "trajectory statistics", ok, f"<p_y>={s['mean']:+.4f}, sd={s['sd']:.4f}, {dt:.2f}s")


def test_ac11_determinism(report, tmp_path, capsys):
    same = []
    for exp in ("sweep-phi1", "sweep-phi2", "sweep-mixture", "qpt", "favg-limit", "classical-baseline"):
        outs = []
        for run in (1, 2):
            out = tmp_path / f"{exp}-{run}.csv"
            argv = [exp, "--mode", "counts", "--seed", "1234", "--samples", "1000", "--out", str(out)]
            assert main(argv) == 0
            outs.append(out.read_bytes() + (tmp_path / f"{exp}-{run}.csv.summary").read_bytes())
        same.append(outs[0] == outs[1])
    capsys.readouterr()
    report(11, "determinism", all(same), f"{sum(same)}/{len(same)} experiments byte-identical")
