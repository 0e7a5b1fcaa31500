"""Exact small-dimension quantum primitives.

States are plain complex numpy arrays (2x2 single-qubit, 4x4 two-qubit
density matrices). Channels are Pauli-diagonal unital qubit maps stored by
their Bloch eigenvalue triple; non-CP triples are representable on purpose,
the CP/P predicates decide validity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class SingularChannelError(ValueError):
    """Raised when an intermediate map is undefined (division by a zero eigenvalue)."""


def validate_density_matrix(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the array as complex."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"{name} must be 2x2 or 4x4, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise ValueError(f"{name} is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
        raise ValueError(f"{name} does not have unit trace")
    if np.min(np.linalg.eigvalsh(rho)) < -PSD_TOL:
        raise ValueError(f"{name} is not positive semidefinite")
    return rho


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch components (rx, ry, rz) of a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    return np.array(
        [
            np.trace(rho @ SIGMA_X).real,
            np.trace(rho @ SIGMA_Y).real,
            np.trace(rho @ SIGMA_Z).real,
        ]
    )


def density_from_bloch(r) -> np.ndarray:
    """2x2 density matrix with the given Bloch vector (|r| <= 1)."""
    rx, ry, rz = r
    norm = np.sqrt(rx * rx + ry * ry + rz * rz)
    if norm > 1 + 1e-10:
        raise ValueError(f"Bloch vector norm {norm} exceeds 1")
    return 0.5 * (IDENTITY + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z)


def pure_state(psi: np.ndarray) -> np.ndarray:
    """Density matrix |psi><psi| of a normalized state vector."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def bell_state(which: str = "phi_plus") -> np.ndarray:
    """4x4 density matrix of one of the four Bell states."""
    s = 1 / np.sqrt(2)
    vectors = {
        "phi_plus": np.array([s, 0, 0, s]),
        "phi_minus": np.array([s, 0, 0, -s]),
        "psi_plus": np.array([0, s, s, 0]),
        "psi_minus": np.array([0, s, -s, 0]),
    }
    if which not in vectors:
        raise ValueError(f"unknown Bell state {which!r}")
    return pure_state(vectors[which])


def trace_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """Trace distance D(rho1, rho2) = (1/2) sum |eig(rho1 - rho2)|."""
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    if rho1.shape != rho2.shape:
        raise ValueError(f"dimension mismatch: {rho1.shape} vs {rho2.shape}")
    eigs = np.linalg.eigvalsh(rho1 - rho2)
    return 0.5 * float(np.sum(np.abs(eigs)))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 state, got shape {rho.shape}")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    # The mu_i (square roots of the eigenvalues of rho * yy rho^* yy) are the
    # singular values of S^T yy S with S = sqrt(rho); the SVD form avoids the
    # precision loss of square-rooting near-zero eigenvalues.
    evals, vecs = np.linalg.eigh(rho)
    sqrt_rho = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    mu = np.linalg.svd(sqrt_rho.T @ yy @ sqrt_rho, compute_uv=False)
    return max(0.0, float(mu[0] - mu[1] - mu[2] - mu[3]))


@dataclass(frozen=True)
class PauliChannel:
    """Pauli-diagonal unital qubit map, stored by its Bloch eigenvalues.

    The map scales Bloch components as r_i -> lam_i * r_i. Triples with
    |lam_i| > 1 or negative Choi weights are representable; use is_cp /
    is_positive to test physicality.
    """

    lam_x: float
    lam_y: float
    lam_z: float

    @staticmethod
    def identity() -> "PauliChannel":
        return PauliChannel(1.0, 1.0, 1.0)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.lam_x, self.lam_y, self.lam_z)

    def matrix(self) -> np.ndarray:
        """4x4 superoperator acting on vectorized 2x2 matrices (column stacking)."""
        q = kraus_weights(self)
        ops = [IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z]
        out = np.zeros((4, 4), dtype=complex)
        for w, op in zip(q, ops):
            out += w * np.kron(op.conj(), op)
        return out


class KrausWeights(NamedTuple):
    """Choi eigenvalue quadruple (q_I, q_x, q_y, q_z) of a Pauli-diagonal map."""

    q_i: float
    q_x: float
    q_y: float
    q_z: float


def kraus_weights(ch: PauliChannel) -> KrausWeights:
    """Choi eigenvalues of a Pauli channel; negative entries witness CP violation."""
    lx, ly, lz = ch.as_tuple()
    return KrausWeights(
        q_i=(1 + lx + ly + lz) / 4,
        q_x=(1 + lx - ly - lz) / 4,
        q_y=(1 - lx + ly - lz) / 4,
        q_z=(1 - lx - ly + lz) / 4,
    )


def channel_from_weights(w: KrausWeights) -> PauliChannel:
    """Inverse of kraus_weights."""
    qi, qx, qy, qz = w
    return PauliChannel(
        lam_x=qi + qx - qy - qz,
        lam_y=qi - qx + qy - qz,
        lam_z=qi - qx - qy + qz,
    )


def apply_channel(ch: PauliChannel, rho: np.ndarray) -> np.ndarray:
    """Apply a Pauli channel to a 2x2 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"apply_channel needs a 2x2 state, got shape {rho.shape}")
    q = kraus_weights(ch)
    ops = [IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z]
    return sum(w * (op @ rho @ op) for w, op in zip(q, ops))


def apply_channel_one_sided(ch: PauliChannel, rho: np.ndarray) -> np.ndarray:
    """Apply (channel x identity) to a 4x4 two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"one-sided application needs a 4x4 state, got shape {rho.shape}")
    q = kraus_weights(ch)
    ops = [IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z]
    return sum(w * (np.kron(op, IDENTITY) @ rho @ np.kron(op, IDENTITY)) for w, op in zip(q, ops))


def is_cp(ch: PauliChannel, tol: float = 1e-10) -> bool:
    """Complete positivity: all four Choi eigenvalues >= -tol."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return all(q >= -tol for q in kraus_weights(ch))


def _fibonacci_sphere(n: int) -> np.ndarray:
    """Deterministic quasi-uniform grid of n unit vectors."""
    k = np.arange(n)
    z = 1 - (2 * k + 1) / n
    phi = np.pi * (3 - np.sqrt(5)) * k
    r = np.sqrt(np.maximum(0.0, 1 - z * z))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def is_positive(ch: PauliChannel, tol: float = 1e-10, grid_points: int = 200) -> bool:
    """Positivity of a Pauli-diagonal map.

    Exact criterion for unital qubit maps: max |lam_i| <= 1 + tol. A
    deterministic Fibonacci-sphere grid of pure states is checked as well,
    guarding against implementation errors in the analytic shortcut.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    analytic = max(abs(l) for l in ch.as_tuple()) <= 1 + tol
    lam = np.array(ch.as_tuple())
    for r in _fibonacci_sphere(grid_points):
        out = lam * r
        # Output eigenvalues are (1 +- |r'|)/2.
        if (1 - np.linalg.norm(out)) / 2 < -tol:
            return False
    return analytic


def compose_channels(later: PauliChannel, earlier: PauliChannel) -> PauliChannel:
    """Concatenation later∘earlier (componentwise eigenvalue product)."""
    return PauliChannel(
        later.lam_x * earlier.lam_x,
        later.lam_y * earlier.lam_y,
        later.lam_z * earlier.lam_z,
    )


def divide_channels(
    later: PauliChannel, earlier: PauliChannel, singular_tol: float = 1e-12
) -> PauliChannel:
    """Intermediate map M with M∘earlier = later (componentwise quotient).

    Raises SingularChannelError when any eigenvalue of `earlier` is within
    singular_tol of zero, in which case the intermediate map is undefined.
    """
    for l in earlier.as_tuple():
        if abs(l) <= singular_tol:
            raise SingularChannelError(
                f"earlier channel eigenvalue {l} is singular (tol {singular_tol})"
            )
    return PauliChannel(
        later.lam_x / earlier.lam_x,
        later.lam_y / earlier.lam_y,
        later.lam_z / earlier.lam_z,
    )
