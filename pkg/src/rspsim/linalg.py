"""Dense complex linear algebra for one, two and three qubits.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Density matrices
are validated on construction by :func:`density` but otherwise travel as
ordinary arrays, so every function here is a pure function of its inputs.

Basis conventions (used across the package):

* ``|H> = |0>`` is the +Z eigenstate, ``|V> = |1>``.
* ``|D> = (|H> + |V>)/sqrt(2)`` is +X, ``|R> = (|H> + i|V>)/sqrt(2)`` is +Y.
* Multi-qubit kets are ordered with the first tensor factor most significant.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

ALLOWED_DIMS = (2, 4, 8)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class DimensionError(ValueError):
    """Raised for matrices outside the supported 2/4/8 dimensions."""


class InvalidStateError(ValueError):
    """Raised when a matrix fails the density-matrix invariants."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in ALLOWED_DIMS:
        raise DimensionError(f"dimension {a.shape[0]} not in {ALLOWED_DIMS}")
    return a


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def density(m, *, tol_psd: float = PSD_TOL) -> np.ndarray:
    """Validate ``m`` as a density matrix and return it as a complex array."""
    rho = as_matrix(m)
    if not is_hermitian(rho):
        raise InvalidStateError("matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace {np.trace(rho).real:.3e} != 1")
    if np.linalg.eigvalsh(rho).min() < -tol_psd:
        raise InvalidStateError("matrix is not positive semidefinite")
    return rho


def ket(*labels: str) -> np.ndarray:
    """Product ket from single-qubit labels in ``{0, 1, H, V, D, A, R, L}``."""
    table = {
        "0": np.array([1, 0], dtype=complex),
        "1": np.array([0, 1], dtype=complex),
        "H": np.array([1, 0], dtype=complex),
        "V": np.array([0, 1], dtype=complex),
        "D": np.array([1, 1], dtype=complex) / np.sqrt(2),
        "A": np.array([1, -1], dtype=complex) / np.sqrt(2),
        "R": np.array([1, 1j], dtype=complex) / np.sqrt(2),
        "L": np.array([1, -1j], dtype=complex) / np.sqrt(2),
    }
    return reduce(np.kron, (table[s] for s in labels))


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def tensor(*ops) -> np.ndarray:
    """Kronecker product, leftmost argument as the most significant factor."""
    mats = [np.asarray(o, dtype=complex) for o in ops]
    dim = int(np.prod([m.shape[0] for m in mats]))
    if dim > 8:
        raise DimensionError(f"tensor product dimension {dim} exceeds 8")
    return reduce(np.kron, mats)


def _n_qubits(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def partial_trace(rho, keep) -> np.ndarray:
    """Reduce ``rho`` onto the qubits listed in ``keep`` (0 = leftmost factor)."""
    rho = np.asarray(rho, dtype=complex)
    n = _n_qubits(rho.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise IndexError(f"subsystem index out of range for {n} qubits: {keep}")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # trace the highest index first so remaining axis numbers stay valid
    for q in reversed(traced):
        m = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + m)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def eig_hermitian(m, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvector columns."""
    a = np.asarray(m, dtype=complex)
    if not is_hermitian(a, tol):
        raise ValueError("eig_hermitian requires a Hermitian matrix")
    a = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(a)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def psd_sqrt(m) -> np.ndarray:
    w, v = eig_hermitian(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def _clip_det(d: float) -> float:
    return d if d > 1e-15 else 0.0


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    if rho.shape[0] == 2:
        # determinants below machine precision are roundoff on a pure state
        det_r = _clip_det(np.linalg.det(rho).real)
        det_s = _clip_det(np.linalg.det(sigma).real)
        f = np.trace(rho @ sigma).real + 2.0 * np.sqrt(det_r * det_s)
    else:
        sr = psd_sqrt(rho)
        inner = sr @ sigma @ sr
        w = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
        # roundoff-level eigenvalues would each add ~1e-8 after the square root
        w = np.where(w > 1e-13, w, 0.0)
        f = float(np.sum(np.sqrt(w))) ** 2
    return float(min(max(f, 0.0), 1.0))


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


@dataclass(frozen=True)
class BlochVector:
    px: float
    py: float
    pz: float

    def __post_init__(self):
        if self.norm > 1 + 1e-10:
            raise ValueError(f"Bloch vector norm {self.norm} exceeds 1")

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.px**2 + self.py**2 + self.pz**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.px, self.py, self.pz])


def bloch_from_rho(rho) -> BlochVector:
    """Bloch vector with the convention ``rho[0, 1] = (px - i py) / 2``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DimensionError("Bloch vectors are defined for single qubits only")
    return BlochVector(
        px=float(2 * rho[0, 1].real),
        py=float(-2 * rho[0, 1].imag),
        pz=float((rho[0, 0] - rho[1, 1]).real),
    )


def rho_from_bloch(p) -> np.ndarray:
    if not isinstance(p, BlochVector):
        p = BlochVector(*map(float, p))
    return 0.5 * np.array(
        [[1 + p.pz, p.px - 1j * p.py], [p.px + 1j * p.py, 1 - p.pz]], dtype=complex
    )
