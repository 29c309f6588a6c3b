"""Polarization analysis and Poisson coincidence counting.

Light passes a half-wave plate, then a quarter-wave plate, then a polarizing
beamsplitter that transmits H and reflects V.

Count records are exchanged as plain text, one record per line::

    # setting-id,hwp-deg,qwp-deg,port,duration-s,counts
    H,0,0,transmitted,10,2991

Lines starting with ``#`` and blank lines are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from .elements import WavePlateSetting, waveplate_jones
from .linalg import ket, projector

DEFAULT_RATE = 600.0  # coincidences per second

Port = Literal["transmitted", "reflected"]


@dataclass(frozen=True)
class MeasurementSetting:
    hwp: WavePlateSetting
    qwp: WavePlateSetting
    port: Port = "transmitted"
    name: str = ""

    @classmethod
    def from_degrees(cls, hwp_deg: float, qwp_deg: float, port: Port = "transmitted", name: str = ""):
        if port not in ("transmitted", "reflected"):
            raise ValueError(f"unknown port {port!r}")
        return cls(
            WavePlateSetting("half", np.deg2rad(hwp_deg)),
            WavePlateSetting("quarter", np.deg2rad(qwp_deg)),
            port,
            name,
        )

    @property
    def hwp_deg(self) -> float:
        return float(np.rad2deg(self.hwp.angle))

    @property
    def qwp_deg(self) -> float:
        return float(np.rad2deg(self.qwp.angle))


def projector_of(setting: MeasurementSetting) -> np.ndarray:
    jones = waveplate_jones(setting.qwp) @ waveplate_jones(setting.hwp)
    out = projector(ket("H" if setting.port == "transmitted" else "V"))
    return jones.conj().T @ out @ jones


# Six-setting Stokes table; each complementary pair shares plates and uses both PBS ports.
CANONICAL_SETTINGS = {
    "H": MeasurementSetting.from_degrees(0.0, 0.0, "transmitted", "H"),
    "V": MeasurementSetting.from_degrees(0.0, 0.0, "reflected", "V"),
    "D": MeasurementSetting.from_degrees(22.5, 0.0, "transmitted", "D"),
    "A": MeasurementSetting.from_degrees(22.5, 0.0, "reflected", "A"),
    "R": MeasurementSetting.from_degrees(0.0, 45.0, "reflected", "R"),
    "L": MeasurementSetting.from_degrees(0.0, 45.0, "transmitted", "L"),
}

STOKES_PAIRS = (("D", "A"), ("R", "L"), ("H", "V"))


@dataclass(frozen=True)
class CountsRecord:
    setting: MeasurementSetting
    duration: float
    counts: float  # integer for sampled data; may be a float mean for exact records
    rate_reference: float = DEFAULT_RATE

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.counts < 0:
            raise ValueError("counts must be non-negative")

    @property
    def rate(self) -> float:
        return self.counts / self.duration


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def expected_counts(rho, setting: MeasurementSetting, duration: float, rate: float = DEFAULT_RATE) -> float:
    p = float(np.real(np.trace(projector_of(setting) @ np.asarray(rho, dtype=complex))))
    return rate * duration * max(p, 0.0)


def simulate_counts(
    rho,
    setting: MeasurementSetting,
    duration: float,
    rate: float = DEFAULT_RATE,
    seed=None,
) -> CountsRecord:
    if duration <= 0:
        raise ValueError("duration must be positive")
    mean = expected_counts(rho, setting, duration, rate)
    return CountsRecord(setting, duration, int(_rng(seed).poisson(mean)), rate)


def simulate_tomography(rho, duration: float, rate: float = DEFAULT_RATE, seed=None) -> list[CountsRecord]:
    """Sampled records for the six canonical settings, drawn from one generator."""
    rng = _rng(seed)
    return [simulate_counts(rho, s, duration, rate, rng) for s in CANONICAL_SETTINGS.values()]


def exact_tomography(rho, duration: float = 1.0, rate: float = DEFAULT_RATE) -> list[CountsRecord]:
    """Infinite-statistics records holding the mean counts."""
    return [
        CountsRecord(s, duration, expected_counts(rho, s, duration, rate), rate)
        for s in CANONICAL_SETTINGS.values()
    ]


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def format_records(records: Iterable[CountsRecord]) -> str:
    lines = ["# setting-id,hwp-deg,qwp-deg,port,duration-s,counts"]
    for r in records:
        s = r.setting
        lines.append(
            ",".join([s.name or "-", _fmt(s.hwp_deg), _fmt(s.qwp_deg), s.port, _fmt(r.duration), _fmt(r.counts)])
        )
    return "\n".join(lines) + "\n"


def parse_records(text: str, rate_reference: float = DEFAULT_RATE) -> list[CountsRecord]:
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 6:
            raise ValueError(f"line {lineno}: expected 6 fields, got {len(fields)}")
        name, hwp_deg, qwp_deg, port, duration, counts = fields
        c = float(counts)
        setting = MeasurementSetting.from_degrees(float(hwp_deg), float(qwp_deg), port, "" if name == "-" else name)
        records.append(CountsRecord(setting, float(duration), int(c) if c.is_integer() else c, rate_reference))
    return records


def write_records(path, records: Iterable[CountsRecord]) -> None:
    Path(path).write_text(format_records(records))


def read_records(path) -> list[CountsRecord]:
    return parse_records(Path(path).read_text())
