"""State and process reconstruction, average fidelity, CHSH and the classical baseline."""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .counting import STOKES_PAIRS, CountsRecord, projector_of
from .elements import PAULI_LABELS, pauli, pauli_basis
from .linalg import bloch_from_rho, eig_hermitian, ket, projector, tensor

Channel = Callable[[np.ndarray], np.ndarray]

_AXES = {"D": (0, 1), "A": (0, -1), "R": (1, 1), "L": (1, -1), "H": (2, 1), "V": (2, -1)}


def _classify(record: CountsRecord) -> str:
    """Name the canonical eigenstate a record projects onto."""
    if record.setting.name in _AXES:
        return record.setting.name
    p = bloch_from_rho(projector_of(record.setting)).as_array()
    axis = int(np.argmax(np.abs(p)))
    if abs(abs(p[axis]) - 1.0) > 1e-6:
        raise ValueError("record setting is not one of the six canonical projectors")
    for name, (ax, sign) in _AXES.items():
        if ax == axis and np.sign(p[axis]) == sign:
            return name
    raise AssertionError("unreachable")


def stokes_from_records(records: Sequence[CountsRecord]) -> np.ndarray:
    """Normalized Stokes vector ``(s1, s2, s3)`` = expectations of ``(X, Y, Z)``."""
    rates: dict[str, float] = {}
    for r in records:
        name = _classify(r)
        rates[name] = rates.get(name, 0.0) + r.rate
    s = np.zeros(3)
    for i, (plus, minus) in enumerate(STOKES_PAIRS):
        if plus not in rates or minus not in rates:
            raise ValueError(f"missing complementary records {plus}/{minus}")
        total = rates[plus] + rates[minus]
        if total <= 0:
            raise ValueError(f"zero total counts in the {plus}/{minus} pair")
        s[i] = (rates[plus] - rates[minus]) / total
    return s


def clip_to_physical(rho) -> np.ndarray:
    """Zero out negative eigenvalues and renormalize the trace."""
    w, v = eig_hermitian(rho)
    if w.min() >= 0:
        return np.asarray(rho, dtype=complex)
    w = np.clip(w, 0.0, None)
    out = (v * w) @ v.conj().T
    return out / np.trace(out).real


def reconstruct_state(records: Sequence[CountsRecord]) -> np.ndarray:
    """Linear-inversion estimate with positivity repair."""
    s1, s2, s3 = stokes_from_records(records)
    rho = 0.5 * (np.eye(2) + s1 * pauli("X") + s2 * pauli("Y") + s3 * pauli("Z"))
    return clip_to_physical(rho)


# Probe inputs for process tomography
PROBES = {name: projector(ket(name)) for name in ("H", "V", "D", "R")}


def _channel_on_basis(outputs: dict[str, np.ndarray]) -> dict[tuple[int, int], np.ndarray]:
    """Images of ``|i><j|`` from the images of the four probe states."""
    h, v, d, r = (np.asarray(outputs[k], dtype=complex) for k in ("H", "V", "D", "R"))
    # |0><1| = |D><D| + i|R><R| - (1+i)/2 (|0><0| + |1><1|)
    e01 = d + 1j * r - 0.5 * (1 + 1j) * (h + v)
    e10 = d - 1j * r - 0.5 * (1 - 1j) * (h + v)
    return {(0, 0): h, (0, 1): e01, (1, 0): e10, (1, 1): v}


def choi_from_outputs(outputs: dict[str, np.ndarray]) -> np.ndarray:
    """Choi matrix ``sum_ij |i><j| (x) E(|i><j|)`` (input factor first)."""
    images = _channel_on_basis(outputs)
    choi = np.zeros((4, 4), dtype=complex)
    for (i, j), img in images.items():
        unit = np.zeros((2, 2), dtype=complex)
        unit[i, j] = 1.0
        choi += tensor(unit, img)
    return choi


def chi_from_choi(choi) -> np.ndarray:
    # chi_mn = <<E_m| J |E_n>> / 4 with |A>> = (I (x) A) sum_i |ii>
    omega = np.eye(2, dtype=complex).reshape(4)
    vecs = [tensor(np.eye(2), e) @ omega for e in pauli_basis()]
    chi = np.array([[vm.conj() @ choi @ vn for vn in vecs] for vm in vecs]) / 4
    return 0.5 * (chi + chi.conj().T)


def process_tomography(channel: Channel) -> np.ndarray:
    """Pauli-basis chi matrix (order I, X, Y, Z) from the four probe outputs."""
    outputs = {}
    for name, probe in PROBES.items():
        out = np.asarray(channel(probe), dtype=complex)
        if out.shape != (2, 2) or not np.all(np.isfinite(out)):
            raise ValueError(f"channel returned an invalid matrix for probe {name}")
        outputs[name] = out
    return chi_from_choi(choi_from_outputs(outputs))


def process_tomography_from_outputs(outputs: dict[str, np.ndarray]) -> np.ndarray:
    return chi_from_choi(choi_from_outputs(outputs))


def channel_from_chi(chi) -> Channel:
    basis = pauli_basis()
    chi = np.asarray(chi, dtype=complex)

    def apply(rho):
        rho = np.asarray(rho, dtype=complex)
        return sum(chi[m, n] * basis[m] @ rho @ basis[n].conj().T for m in range(4) for n in range(4))

    return apply


def trace_preservation_defect(chi) -> float:
    """Largest entry of ``sum_mn chi_mn E_n^dag E_m - I``."""
    basis = pauli_basis()
    chi = np.asarray(chi, dtype=complex)
    s = sum(chi[m, n] * basis[n].conj().T @ basis[m] for m in range(4) for n in range(4))
    return float(np.max(np.abs(s - np.eye(2))))


def avg_fidelity(chi) -> float:
    return (2.0 * float(np.real(np.asarray(chi)[0, 0])) + 1.0) / 3.0


def chi_labels() -> tuple[str, ...]:
    return PAULI_LABELS


# CHSH with linear polarizers

# Analyzer angles (a, a', b, b') maximizing S for |phi->, where E(a, b) = cos 2(a + b).
OPTIMAL_CHSH_ANGLES = (0.0, np.pi / 4, -np.pi / 8, -3 * np.pi / 8)


def polarizer_projector(angle: float) -> np.ndarray:
    return projector(np.array([np.cos(angle), np.sin(angle)], dtype=complex))


def correlation(rho4, a: float, b: float) -> float:
    rho4 = np.asarray(rho4, dtype=complex)
    e = 0.0
    for da, sa in ((0.0, 1), (np.pi / 2, -1)):
        for db, sb in ((0.0, 1), (np.pi / 2, -1)):
            proj = tensor(polarizer_projector(a + da), polarizer_projector(b + db))
            e += sa * sb * np.real(np.trace(proj @ rho4))
    return float(e)


def chsh(rho4, angles: Sequence[float] = OPTIMAL_CHSH_ANGLES) -> float:
    a, a2, b, b2 = angles
    return abs(
        correlation(rho4, a, b)
        - correlation(rho4, a, b2)
        + correlation(rho4, a2, b)
        + correlation(rho4, a2, b2)
    )


# Classical measure-and-resend baseline


def sample_pure_bloch(n: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vectors drawn from the rotation-invariant measure (uniform cos theta, phi)."""
    cos_t = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2 * np.pi, n)
    sin_t = np.sqrt(1.0 - cos_t**2)
    return np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), cos_t])


def measure_and_resend_fidelity(inputs: np.ndarray, axes: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Per-sample fidelity of resending the measured eigenstate along ``axes``."""
    c = np.einsum("ij,ij->i", inputs, axes)
    p_plus = 0.5 * (1 + c)
    plus = rng.uniform(size=len(c)) < p_plus
    sign = np.where(plus, 1.0, -1.0)
    return 0.5 * (1 + sign * c)


def classical_baseline(n_samples: int = 100_000, seed=0) -> float:
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    inputs = sample_pure_bloch(n_samples, rng)
    axes = sample_pure_bloch(n_samples, rng)
    return float(np.mean(measure_and_resend_fidelity(inputs, axes, rng)))

