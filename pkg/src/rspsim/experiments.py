"""End-to-end experiments: trajectory sweeps, mixture sweep, per-channel process
tomography, CHSH, resource-limited average fidelity and the classical baseline.

Each experiment returns a :class:`ResultTable` (per-point rows) and a summary
dict. Tables serialize to a header line, a column line and comma-separated
rows; summaries to ``key=value`` lines.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, astuple, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .counting import DEFAULT_RATE, simulate_tomography
from .elements import BeamsplitterSpec, ResourceModel, bell_phi_minus_ket, pauli, realize_resource
from .linalg import bloch_from_rho, fidelity, purity
from .preparation import CoherenceModel, PreparationSettings, prepare_input
from .protocol import OUTCOME_LABELS, ProtocolConfig, channel_of, correction_for, outcome
from .tomography import (
    OPTIMAL_CHSH_ANGLES,
    PROBES,
    avg_fidelity,
    chsh,
    classical_baseline,
    correlation,
    process_tomography,
    process_tomography_from_outputs,
    reconstruct_state,
    sample_pure_bloch,
)

EXPERIMENTS = (
    "sweep-phi1",
    "sweep-phi2",
    "sweep-mixture",
    "qpt",
    "chsh",
    "favg-limit",
    "classical-baseline",
)


def parse_resource(spec: str) -> ResourceModel:
    """Parse ``ideal``, ``werner:<p>``, ``werner-fid:<F>``,
    ``rotated:<ax,ay,az;bx,by,bz>`` or ``file:<path>``."""
    kind, _, arg = spec.partition(":")
    if kind == "ideal" and not arg:
        return ResourceModel.ideal()
    if kind == "werner":
        return ResourceModel.werner(float(arg))
    if kind == "werner-fid":
        return ResourceModel.werner_from_fidelity(float(arg))
    if kind == "rotated":
        sides = arg.split(";")
        if len(sides) != 2:
            raise ValueError("rotated resource needs two ';'-separated rotation vectors")
        vecs = [tuple(float(x) for x in s.split(",")) for s in sides]
        if any(len(v) != 3 for v in vecs):
            raise ValueError("rotation vectors need three components")
        return ResourceModel.rotated_bell(*vecs)
    if kind == "file":
        return ResourceModel.exact(read_matrix_file(arg))
    raise ValueError(f"unrecognized resource spec {spec!r}")


def read_matrix_file(path) -> np.ndarray:
    """4x4 complex matrix, 16 lines of ``re,im`` in row-major order."""
    rows = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    if len(rows) != 16:
        raise ValueError(f"{path}: expected 16 're,im' lines, got {len(rows)}")
    vals = []
    for ln in rows:
        re, im = ln.split(",")
        vals.append(complex(float(re), float(im)))
    return np.array(vals, dtype=complex).reshape(4, 4)


def write_matrix_file(path, m) -> None:
    m = np.asarray(m, dtype=complex).reshape(16)
    Path(path).write_text("".join(f"{float(z.real)!r},{float(z.imag)!r}\n" for z in m))


@dataclass
class ExperimentConfig:
    experiment: str = "sweep-phi1"
    resource: str = "ideal"
    bs_t: float = 0.5
    mode: str = "exact"
    rate: float = DEFAULT_RATE
    duration: float = 10.0
    seed: int = 0
    grid: int = 24
    label: str = "0H"
    samples: int = 10_000
    angles: tuple[float, float, float, float] = OPTIMAL_CHSH_ANGLES
    two_detector: bool = False
    coherence: CoherenceModel = field(default_factory=CoherenceModel)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.mode not in ("exact", "counts"):
            raise ValueError(f"mode must be 'exact' or 'counts', got {self.mode!r}")
        if self.grid < 1:
            raise ValueError("grid must be non-empty")
        if self.mode == "counts" and self.duration <= 0:
            raise ValueError("duration must be positive in counting mode")
        if self.label not in OUTCOME_LABELS and self.label != "all":
            raise ValueError(f"unknown outcome label {self.label!r}")
        self.angles = tuple(float(a) for a in self.angles)

    def protocol(self) -> ProtocolConfig:
        return ProtocolConfig(parse_resource(self.resource), BeamsplitterSpec(self.bs_t), self.two_detector)

    def digest(self) -> str:
        d = asdict(self)
        return hashlib.sha256(json.dumps(d, sort_keys=True, default=str).encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Serialization


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _parse_value(s: str):
    for conv in (int, float):
        try:
            return conv(s)
        except ValueError:
            pass
    return s


@dataclass
class ResultTable:
    meta: dict[str, Any]
    columns: list[str]
    rows: list[tuple]

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def dumps(self) -> str:
        header = "# " + " ".join(f"{k}={_fmt(v)}" for k, v in self.meta.items())
        lines = [header, ",".join(self.columns)]
        lines += [",".join(_fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ResultTable":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("# "):
            raise ValueError("missing header line")
        meta = {}
        for tok in lines[0][2:].split():
            k, _, v = tok.partition("=")
            meta[k] = _parse_value(v)
        columns = lines[1].split(",")
        rows = [tuple(_parse_value(x) for x in ln.split(",")) for ln in lines[2:] if ln]
        return cls(meta, columns, rows)


def format_summary(summary: dict[str, Any]) -> str:
    return "".join(f"{k}={_fmt(v)}\n" for k, v in summary.items())


def parse_summary(text: str) -> dict[str, Any]:
    out = {}
    for ln in text.splitlines():
        if ln.strip():
            k, _, v = ln.partition("=")
            out[k] = _parse_value(v)
    return out


def write_outputs(out, table: ResultTable, summary: dict[str, Any]) -> tuple[Path, Path]:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    summary_path = out.with_name(out.name + ".summary")
    out.write_text(table.dumps())
    summary_path.write_text(format_summary(summary))
    return out, summary_path


# ---------------------------------------------------------------------------
# Trajectory sweeps

TRAJECTORY_COLUMNS = [
    "index",
    "dphi1",
    "dphi2",
    "path_mismatch_m",
    "label",
    "px",
    "py",
    "pz",
    "modulus",
    "purity",
    "fidelity",
]


@dataclass(frozen=True)
class TrajectoryRecord:
    index: int
    dphi1: float
    dphi2: float
    path_mismatch: float
    label: str
    px: float
    py: float
    pz: float
    modulus: float
    purity: float
    fidelity: float

    def row(self) -> tuple:
        return astuple(self)


def _point_rngs(cfg: ExperimentConfig, n: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(cfg.seed).spawn(n)]


def teleport_point(settings: PreparationSettings, cfg: ExperimentConfig, proto: ProtocolConfig, rng, index: int = 0):
    label = "0H" if cfg.label == "all" else cfg.label
    target = prepare_input(settings)
    o = outcome(target, proto, label)
    if not o.defined:
        raise ValueError(f"outcome {label} has zero probability at grid point {index}")
    if cfg.mode == "counts":
        raw = reconstruct_state(simulate_tomography(o.bob_state, cfg.duration, cfg.rate, rng))
        c = pauli(o.correction)
        bob = c @ raw @ c.conj().T
    else:
        bob = o.corrected_state
    p = bloch_from_rho(bob)
    return TrajectoryRecord(
        index,
        float(settings.dphi1),
        float(settings.dphi2),
        float(settings.path_mismatch),
        label,
        p.px,
        p.py,
        p.pz,
        p.norm,
        purity(bob),
        fidelity(bob, target),
    )


def _sweep(cfg: ExperimentConfig, settings: list[PreparationSettings]) -> list[TrajectoryRecord]:
    proto = cfg.protocol()
    rngs = _point_rngs(cfg, len(settings))
    return [teleport_point(s, cfg, proto, rngs[i], i) for i, s in enumerate(settings)]


def _meta(cfg: ExperimentConfig) -> dict[str, Any]:
    return {"experiment": cfg.experiment, "config": cfg.digest(), "seed": cfg.seed, "mode": cfg.mode}


def _plane_summary(records: list[TrajectoryRecord], component: str) -> dict[str, Any]:
    vals = np.array([getattr(r, component) for r in records])
    return {
        "points": len(records),
        "out_of_plane": component,
        "mean": float(np.mean(vals)),
        "sd": float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0,
        "max_abs": float(np.max(np.abs(vals))),
        "mean_fidelity": float(np.mean([r.fidelity for r in records])),
    }


def sweep_phi1(cfg: ExperimentConfig):
    """Sweep dphi1 over a full cycle with dphi2 = pi/2 (real superpositions, Z-X plane)."""
    phis = np.linspace(0.0, 2 * np.pi, cfg.grid, endpoint=False)
    settings = [PreparationSettings(float(p), np.pi / 2, 0.0, cfg.coherence) for p in phis]
    records = _sweep(cfg, settings)
    table = ResultTable(_meta(cfg), TRAJECTORY_COLUMNS, [r.row() for r in records])
    return table, _plane_summary(records, "py")


def sweep_phi2(cfg: ExperimentConfig):
    """Sweep dphi2 over a full cycle with dphi1 = pi/2 (equal weights, equatorial plane)."""
    phis = np.linspace(0.0, 2 * np.pi, cfg.grid, endpoint=False)
    settings = [PreparationSettings(np.pi / 2, float(p), 0.0, cfg.coherence) for p in phis]
    records = _sweep(cfg, settings)
    table = ResultTable(_meta(cfg), TRAJECTORY_COLUMNS, [r.row() for r in records])
    return table, _plane_summary(records, "pz")


def sweep_mixture(cfg: ExperimentConfig):
    """Add n = 0 .. grid-1 wavelengths of arm mismatch at dphi1 = pi/2, dphi2 = 0."""
    lam = cfg.coherence.wavelength
    settings = [PreparationSettings(np.pi / 2, 0.0, n * lam, cfg.coherence) for n in range(cfg.grid)]
    records = _sweep(cfg, settings)
    table = ResultTable(_meta(cfg), TRAJECTORY_COLUMNS, [r.row() for r in records])
    moduli = np.array([r.modulus for r in records])
    summary = {
        "points": len(records),
        "modulus_first": float(moduli[0]),
        "modulus_last": float(moduli[-1]),
        "monotone": bool(np.all(np.diff(moduli) <= 1e-12)),
        "mean_fidelity": float(np.mean([r.fidelity for r in records])),
    }
    return table, summary


# ---------------------------------------------------------------------------
# Process tomography and fidelity limits


def _channel_outputs_counts(channel, cfg: ExperimentConfig, rng) -> dict[str, np.ndarray]:
    return {
        name: reconstruct_state(simulate_tomography(channel(probe), cfg.duration, cfg.rate, rng))
        for name, probe in PROBES.items()
    }


def qpt_chi(cfg: ExperimentConfig, label: str, rng=None) -> np.ndarray:
    channel = channel_of(cfg.protocol(), label)
    if cfg.mode == "counts":
        return process_tomography_from_outputs(_channel_outputs_counts(channel, cfg, rng))
    return process_tomography(channel)


def qpt_channel(cfg: ExperimentConfig):
    labels = OUTCOME_LABELS if cfg.label == "all" else (cfg.label,)
    rngs = _point_rngs(cfg, len(labels))
    rows, summary = [], {}
    for label, rng in zip(labels, rngs):
        chi = qpt_chi(cfg, label, rng)
        for m in range(4):
            for n in range(4):
                rows.append((label, m, n, float(chi[m, n].real), float(chi[m, n].imag)))
        summary[f"chi00_{label}"] = float(chi[0, 0].real)
        summary[f"favg_{label}"] = avg_fidelity(chi)
    favgs = [summary[f"favg_{lb}"] for lb in labels]
    summary["favg_spread"] = float(max(favgs) - min(favgs))
    table = ResultTable(_meta(cfg), ["label", "m", "n", "re", "im"], rows)
    return table, summary


def corrected_fidelities(proto: ProtocolConfig, label: str, bloch: np.ndarray) -> np.ndarray:
    """Corrected-state fidelity for each pure input given by its Bloch vector."""
    c = pauli(correction_for(label))
    out = np.empty(len(bloch))
    for i, (x, y, z) in enumerate(bloch):
        target = 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])
        o = outcome(target, proto, label)
        bob = c @ o.bob_state @ c.conj().T
        # pure target: F = <psi|bob|psi> = Tr(target bob)
        out[i] = float(np.real(np.trace(target @ bob)))
    return out


def favg_limit(cfg: ExperimentConfig):
    if cfg.samples < 1:
        raise ValueError("need at least one sample")
    proto = cfg.protocol()
    label = "0H" if cfg.label == "all" else cfg.label
    rng = np.random.default_rng(cfg.seed)
    bloch = sample_pure_bloch(cfg.samples, rng)
    fids = corrected_fidelities(proto, label, bloch)
    chi = process_tomography(channel_of(proto, label))
    mean = float(np.mean(fids))
    sem = float(np.std(fids, ddof=1) / np.sqrt(len(fids))) if len(fids) > 1 else 0.0
    summary = {
        "label": label,
        "samples": cfg.samples,
        "favg_mc": mean,
        "favg_sem": sem,
        "favg_qpt": avg_fidelity(chi),
        "bell_fidelity": bell_fidelity(proto),
    }
    table = ResultTable(_meta(cfg), list(summary), [tuple(summary.values())])
    return table, summary


def bell_fidelity(proto: ProtocolConfig) -> float:
    psi = bell_phi_minus_ket()
    return float(np.real(psi.conj() @ proto.resource_matrix @ psi))


def run_chsh(cfg: ExperimentConfig):
    rho4 = realize_resource(parse_resource(cfg.resource))
    a, a2, b, b2 = cfg.angles
    pairs = [("a", "b", a, b), ("a", "b'", a, b2), ("a'", "b", a2, b), ("a'", "b'", a2, b2)]
    rows = [(x, y, float(ta), float(tb), correlation(rho4, ta, tb)) for x, y, ta, tb in pairs]
    s = chsh(rho4, cfg.angles)
    table = ResultTable(_meta(cfg), ["alice", "bob", "alice_angle", "bob_angle", "correlation"], rows)
    return table, {"S": s, "violates": bool(s > 2.0)}


def run_classical_baseline(cfg: ExperimentConfig):
    value = classical_baseline(cfg.samples, cfg.seed)
    summary = {"samples": cfg.samples, "favg": value}
    return ResultTable(_meta(cfg), list(summary), [tuple(summary.values())]), summary


RUNNERS = {
    "sweep-phi1": sweep_phi1,
    "sweep-phi2": sweep_phi2,
    "sweep-mixture": sweep_mixture,
    "qpt": qpt_channel,
    "chsh": run_chsh,
    "favg-limit": favg_limit,
    "classical-baseline": run_classical_baseline,
}


def run_experiment(cfg: ExperimentConfig):
    return RUNNERS[cfg.experiment](cfg)
