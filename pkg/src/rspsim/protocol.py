"""Teleportation of the prepared path qubit onto Bob's polarization.

Qubit order in the three-qubit register is
``(Alice path, Alice polarization, Bob polarization)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .elements import (
    BeamsplitterSpec,
    ResourceModel,
    beamsplitter_unitary,
    path_cnot,
    pauli,
    realize_resource,
)
from .linalg import density, partial_trace, tensor

OUTCOME_LABELS = ("0H", "0V", "1H", "1V")

# Outcome -> Pauli correction applied on Bob's side.
CORRECTIONS = {"0H": "I", "1H": "Z", "0V": "Y", "1V": "X"}

# Physical port naming, (raw path bit, raw polarization bit) -> label. Port
# names are a convention; this table is the one constant permutation that
# makes 0H the uncorrected output for |phi->, the path CNOT and the
# beamsplitter Hadamard. Raw corrections are (0,H):Z (0,V):Y (1,H):I (1,V):X.
_PORT_LABELS = {(0, 0): "1H", (0, 1): "0V", (1, 0): "0H", (1, 1): "1V"}

ZERO_PROB_TOL = 1e-12


class ZeroProbabilityOutcome(ValueError):
    """The requested outcome never occurs for this input; no conditional state exists."""


@dataclass(frozen=True)
class ProtocolConfig:
    resource: ResourceModel = field(default_factory=ResourceModel.ideal)
    beamsplitter: BeamsplitterSpec = field(default_factory=BeamsplitterSpec)
    two_detector: bool = False

    @cached_property
    def resource_matrix(self) -> np.ndarray:
        return realize_resource(self.resource)

    @cached_property
    def circuit(self) -> np.ndarray:
        """Alice's gate sequence on all three qubits: CNOT, then the beamsplitter."""
        i2 = np.eye(2, dtype=complex)
        cnot = tensor(path_cnot(), i2)
        bs = tensor(beamsplitter_unitary(self.beamsplitter), i2, i2)
        return bs @ cnot

    @cached_property
    def measurement_projectors(self) -> dict[str, np.ndarray]:
        out = {}
        for (raw_path, raw_pol), label in _PORT_LABELS.items():
            e = np.zeros(4, dtype=complex)
            e[2 * raw_path + raw_pol] = 1.0
            out[label] = tensor(np.outer(e, e), np.eye(2, dtype=complex))
        return out


@dataclass(frozen=True)
class TeleportOutcome:
    label: str
    probability: float
    bob_unnormalized: np.ndarray = field(repr=False)
    correction: str

    @property
    def defined(self) -> bool:
        return self.probability > ZERO_PROB_TOL

    @property
    def bob_state(self) -> np.ndarray | None:
        """Normalized conditional state, or ``None`` when the outcome cannot occur."""
        if not self.defined:
            return None
        return self.bob_unnormalized / self.probability

    @property
    def corrected_state(self) -> np.ndarray | None:
        rho = self.bob_state
        if rho is None:
            return None
        c = pauli(self.correction)
        return c @ rho @ c.conj().T


def correction_for(label: str) -> str:
    try:
        return CORRECTIONS[label]
    except KeyError:
        raise ValueError(f"unknown outcome label {label!r}") from None


def run_protocol(rho_in, cfg: ProtocolConfig | None = None) -> list[TeleportOutcome]:
    cfg = cfg or ProtocolConfig()
    rho_in = np.asarray(rho_in, dtype=complex)
    if rho_in.shape != (2, 2):
        raise ValueError("input must be a single-qubit density matrix")
    u = cfg.circuit
    total = u @ tensor(rho_in, cfg.resource_matrix) @ u.conj().T
    outcomes = []
    for label in OUTCOME_LABELS:
        proj = cfg.measurement_projectors[label]
        bob = partial_trace(proj @ total @ proj, keep=[2])
        outcomes.append(
            TeleportOutcome(label, float(np.trace(bob).real), bob, correction_for(label))
        )
    if sum(o.probability for o in outcomes) <= ZERO_PROB_TOL:
        raise ZeroProbabilityOutcome("all outcomes have zero probability")
    return outcomes


def outcome(rho_in, cfg: ProtocolConfig, label: str) -> TeleportOutcome:
    for o in run_protocol(rho_in, cfg):
        if o.label == label:
            return o
    raise ValueError(f"unknown outcome label {label!r}")


def detected_outcomes(cfg: ProtocolConfig) -> tuple[str, ...]:
    """Outcomes registered by Alice's detectors (two-detector mode keeps path 0)."""
    return ("0H", "0V") if cfg.two_detector else OUTCOME_LABELS


def success_probability(outcomes: list[TeleportOutcome], cfg: ProtocolConfig) -> float:
    keep = detected_outcomes(cfg)
    return float(sum(o.probability for o in outcomes if o.label in keep))


def channel_of(cfg: ProtocolConfig, label: str) -> Callable[[np.ndarray], np.ndarray]:
    """Map an input state to Bob's corrected, normalized state for ``label``."""
    correction_for(label)

    def channel(rho_in):
        o = outcome(rho_in, cfg, label)
        if not o.defined:
            raise ZeroProbabilityOutcome(f"outcome {label} has zero probability for this input")
        return density(o.corrected_state, tol_psd=1e-9)

    return channel
