"""Simulator for remote state preparation by photonic teleportation."""

from .elements import BeamsplitterSpec, ResourceModel, bell_phi_minus, realize_resource
from .linalg import BlochVector, bloch_from_rho, fidelity, partial_trace, purity, rho_from_bloch
from .preparation import CoherenceModel, PreparationSettings, prepare_input, visibility
from .protocol import ProtocolConfig, channel_of, correction_for, run_protocol
from .tomography import avg_fidelity, chsh, process_tomography, reconstruct_state

__all__ = [
    "BeamsplitterSpec",
    "BlochVector",
    "CoherenceModel",
    "PreparationSettings",
    "ProtocolConfig",
    "ResourceModel",
    "avg_fidelity",
    "bell_phi_minus",
    "bloch_from_rho",
    "channel_of",
    "chsh",
    "correction_for",
    "fidelity",
    "partial_trace",
    "prepare_input",
    "process_tomography",
    "purity",
    "realize_resource",
    "reconstruct_state",
    "rho_from_bloch",
    "run_protocol",
    "visibility",
]
