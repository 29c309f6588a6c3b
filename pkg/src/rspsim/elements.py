"""Fixed optical operators and entangled-resource models.

Wave plates follow the Jones convention ``J = R(theta) diag(1, e^{i delta}) R(-theta)``
with the fast axis at ``theta`` from horizontal. Global phases are never
tracked; comparisons are made on density matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .linalg import density, ket, projector, tensor

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI_LABELS = ("I", "X", "Y", "Z")
_PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def pauli(label: str) -> np.ndarray:
    try:
        return _PAULIS[label].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli label {label!r}") from None


def pauli_basis() -> list[np.ndarray]:
    """Operator basis ``E_0..E_3 = I, X, Y, Z`` with ``Tr(E_m E_n) = 2 delta_mn``."""
    return [pauli(s) for s in PAULI_LABELS]


def bell_phi_minus_ket() -> np.ndarray:
    return (ket("H", "H") - ket("V", "V")) / np.sqrt(2)


def bell_phi_minus() -> np.ndarray:
    return projector(bell_phi_minus_ket())


def bell_basis() -> dict[str, np.ndarray]:
    s = np.sqrt(2)
    return {
        "phi+": (ket("0", "0") + ket("1", "1")) / s,
        "phi-": (ket("0", "0") - ket("1", "1")) / s,
        "psi+": (ket("0", "1") + ket("1", "0")) / s,
        "psi-": (ket("0", "1") - ket("1", "0")) / s,
    }


def rotation(rotvec) -> np.ndarray:
    """SU(2) rotation ``exp(-i theta n.sigma / 2)`` for rotation vector ``theta * n``."""
    v = np.asarray(rotvec, dtype=float)
    theta = float(np.linalg.norm(v))
    if theta == 0.0:
        return I2.copy()
    n = v / theta
    gen = n[0] * X + n[1] * Y + n[2] * Z
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * gen


@dataclass(frozen=True)
class WavePlateSetting:
    kind: Literal["half", "quarter"]
    angle: float  # fast-axis angle, radians

    def __post_init__(self):
        if self.kind not in ("half", "quarter"):
            raise ValueError(f"unknown wave plate kind {self.kind!r}")
        object.__setattr__(self, "angle", float(np.mod(self.angle, np.pi)))

    @property
    def retardance(self) -> float:
        return np.pi if self.kind == "half" else np.pi / 2


def _rot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def waveplate_jones(s: WavePlateSetting) -> np.ndarray:
    retarder = np.diag([1.0, np.exp(1j * s.retardance)])
    return _rot(s.angle) @ retarder @ _rot(-s.angle)


def hwp(angle: float) -> np.ndarray:
    return waveplate_jones(WavePlateSetting("half", angle))


def qwp(angle: float) -> np.ndarray:
    return waveplate_jones(WavePlateSetting("quarter", angle))


def path_cnot() -> np.ndarray:
    """Path (first factor) controls a 90-degree polarization flip (second factor)."""
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    # modeled as the ideal controlled-X; the HWP(0) sign on path 0 is dropped
    return tensor(p0, I2) + tensor(p1, X)


@dataclass(frozen=True)
class BeamsplitterSpec:
    transmittance: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.transmittance < 1.0:
            raise ValueError(f"transmittance must lie in (0, 1), got {self.transmittance}")

    @property
    def reflectance(self) -> float:
        return 1.0 - self.transmittance


def beamsplitter_unitary(spec: BeamsplitterSpec) -> np.ndarray:
    t = np.sqrt(spec.transmittance)
    r = np.sqrt(spec.reflectance)
    return np.array([[t, r], [r, -t]], dtype=complex)


@dataclass(frozen=True)
class ResourceModel:
    """Shared two-qubit state: ``exact``, ``werner`` or ``rotated_bell``.

    ``rotations`` holds two rotation vectors (radians), one per side, for the
    ``rotated_bell`` variant.
    """

    variant: Literal["exact", "werner", "rotated_bell"] = "werner"
    p: float = 1.0
    matrix: np.ndarray | None = field(default=None, compare=False, repr=False)
    rotations: tuple[tuple[float, float, float], tuple[float, float, float]] = (
        (0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0),
    )

    @classmethod
    def ideal(cls) -> "ResourceModel":
        return cls("werner", p=1.0)

    @classmethod
    def werner(cls, p: float) -> "ResourceModel":
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Werner weight must lie in [0, 1], got {p}")
        return cls("werner", p=float(p))

    @classmethod
    def werner_from_fidelity(cls, f: float) -> "ResourceModel":
        return cls.werner((4 * f - 1) / 3)

    @classmethod
    def rotated_bell(cls, rot_a, rot_b) -> "ResourceModel":
        return cls("rotated_bell", rotations=(tuple(map(float, rot_a)), tuple(map(float, rot_b))))

    @classmethod
    def exact(cls, rho) -> "ResourceModel":
        rho = density(rho)
        if rho.shape != (4, 4):
            raise ValueError("resource matrix must be 4x4")
        return cls("exact", matrix=rho)


def realize_resource(model: ResourceModel) -> np.ndarray:
    if model.variant == "werner":
        return model.p * bell_phi_minus() + (1 - model.p) * np.eye(4, dtype=complex) / 4
    if model.variant == "rotated_bell":
        u = tensor(rotation(model.rotations[0]), rotation(model.rotations[1]))
        return u @ bell_phi_minus() @ u.conj().T
    if model.variant == "exact":
        if model.matrix is None:
            raise ValueError("exact resource needs a matrix")
        return density(model.matrix)
    raise ValueError(f"unknown resource variant {model.variant!r}")
