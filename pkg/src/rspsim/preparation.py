"""Input-state preparation on the path qubit.

The first interferometer sets two phases, ``dphi1`` (inside) and ``dphi2``
(at the output), and a length mismatch between arms that lowers the fringe
visibility through a gaussian coherence envelope.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

UM = 1e-6


@dataclass(frozen=True)
class CoherenceModel:
    wavelength: float = 0.810 * UM
    envelope_fwhm: float = 15.0 * UM
    shape: Literal["gaussian"] = "gaussian"

    def __post_init__(self):
        if self.wavelength <= 0 or self.envelope_fwhm <= 0:
            raise ValueError("wavelength and envelope FWHM must be positive")
        if self.shape != "gaussian":
            raise ValueError(f"unsupported envelope shape {self.shape!r}")


@dataclass(frozen=True)
class PreparationSettings:
    dphi1: float = 0.0
    dphi2: float = 0.0
    path_mismatch: float = 0.0  # metres, signed
    coherence: CoherenceModel = field(default_factory=CoherenceModel)
    phase_step: float | None = None  # quantize phases to this step when set

    @property
    def visibility(self) -> float:
        return visibility(self.path_mismatch, self.coherence)


def visibility(delta_l: float, model: CoherenceModel | None = None) -> float:
    model = model or CoherenceModel()
    return float(np.exp(-4 * np.log(2) * delta_l**2 / model.envelope_fwhm**2))


def cycle_step_visibility(n: int, model: CoherenceModel | None = None) -> float:
    """Visibility after ``n`` full-cycle phase steps, i.e. a mismatch of ``n`` wavelengths."""
    if n < 0:
        raise ValueError("cycle count must be non-negative")
    model = model or CoherenceModel()
    return visibility(n * model.wavelength, model)


def _quantize(phase: float, step: float | None) -> float:
    if not step:
        return phase
    return float(np.round(phase / step) * step)


def density_from_phases(dphi1: float, dphi2: float, v: float) -> np.ndarray:
    c = v * np.cos(dphi1)
    off = 1j * np.exp(-1j * dphi2) * v * np.sin(dphi1)
    return 0.5 * np.array([[1 + c, off], [np.conj(off), 1 - c]], dtype=complex)


def prepare_input(s: PreparationSettings) -> np.ndarray:
    v = s.visibility
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility {v} outside [0, 1]")
    return density_from_phases(_quantize(s.dphi1, s.phase_step), _quantize(s.dphi2, s.phase_step), v)


BK7_INDEX_810NM = 1.5106


def tilted_plate_opd(thickness: float, tilt: float, index: float = BK7_INDEX_810NM) -> float:
    """Extra optical path of a plane-parallel plate tilted by ``tilt`` radians,
    relative to normal incidence."""
    s = np.sin(tilt)
    return float(thickness * (np.sqrt(index**2 - s**2) - np.cos(tilt) - (index - 1.0)))


def phase_resolution(
    plate_thickness: float,
    actuator_step: float,
    offset_tilt: float = 0.0,
    index: float = BK7_INDEX_810NM,
    wavelength: float = 0.810 * UM,
) -> tuple[float, float]:
    """Phase advanced by one actuator step of a tilted plate.

    Returns ``(radians, fraction_of_wavelength)`` for a rotation from
    ``offset_tilt`` to ``offset_tilt + actuator_step``.
    """
    if plate_thickness <= 0 or wavelength <= 0 or actuator_step < 0:
        raise ValueError("plate geometry must be positive")
    d_opd = tilted_plate_opd(plate_thickness, offset_tilt + actuator_step, index) - tilted_plate_opd(
        plate_thickness, offset_tilt, index
    )
    frac = abs(d_opd) / wavelength
    return float(2 * np.pi * frac), float(frac)


def calibrated_phase_resolution(
    actuator_step_deg: float = 1.0,
    actuator_range_deg: float = 180.0,
    cycles_over_range: float = 1.0,
) -> tuple[float, float]:
    """Per-step phase when the offset is set so the full range spans whole cycles,
    treating the phase as linear in actuator position."""
    if actuator_range_deg <= 0 or cycles_over_range <= 0 or actuator_step_deg < 0:
        raise ValueError("actuator geometry must be positive")
    phase = 2 * np.pi * cycles_over_range * actuator_step_deg / actuator_range_deg
    return float(phase), float(phase / (2 * np.pi))
