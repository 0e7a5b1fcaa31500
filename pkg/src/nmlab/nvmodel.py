"""Electron-spin dephasing controlled by a prepared nuclear spin.

The nuclear spin is polarized and rotated by an angle phi, leaving
populations (cos^2(phi/2), sin^2(phi/2)) that imprint opposite hyperfine
phases +-A t/2 on the electron coherence. The rest of the bath is
coarse-grained into a deterministic envelope. On top of the free dephasing
sits the single-qubit constant-vs-balanced phase-gate discrimination
protocol with an echo pulse and delayed readout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .qcore import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z


@dataclass(frozen=True)
class NVParams:
    """Hyperfine coupling and residual-environment envelope."""

    coupling: float
    envelope_time: float
    envelope_shape: str = "gaussian"

    def __post_init__(self):
        if self.coupling <= 0:
            raise ValueError("coupling must be > 0")
        if self.envelope_time <= 0:
            raise ValueError("envelope_time must be > 0")
        if self.envelope_shape not in ("gaussian", "exponential"):
            raise ValueError("envelope_shape must be 'gaussian' or 'exponential'")


def default_params() -> NVParams:
    # Illustrative scale: ~10 envelope times per hyperfine period.
    coupling = 2 * np.pi * 2.16
    return NVParams(coupling=coupling, envelope_time=10 * (2 * np.pi / coupling))


def envelope(params: NVParams, t):
    t = np.asarray(t, dtype=float)
    if params.envelope_shape == "gaussian":
        out = np.exp(-((t / params.envelope_time) ** 2))
    else:
        out = np.exp(-t / params.envelope_time)
    return float(out) if out.ndim == 0 else out


def nv_kappa(params: NVParams, phi: float, t):
    """Electron decoherence function for nuclear preparation angle phi.

    Two nuclear branches with populations cos^2(phi/2), sin^2(phi/2)
    contribute counter-rotating phasors e^{+-iAt/2} under the envelope.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    c2 = np.cos(phi / 2) ** 2
    s2 = np.sin(phi / 2) ** 2
    phase = params.coupling * t / 2
    out = envelope(params, t) * (c2 * np.exp(1j * phase) + s2 * np.exp(-1j * phase))
    return complex(out) if out.ndim == 0 else out


def bloch_magnitude(params: NVParams, phi: float, t):
    """r(t) = |kappa(t)| for the equatorial Ramsey initial state."""
    return np.abs(nv_kappa(params, phi, t))


def nm_measure_phi(params: NVParams, phi_grid, t_grid) -> list[tuple[float, float]]:
    """Non-Markovianity (total revival of r(t)) for each preparation angle."""
    phi_grid = np.atleast_1d(np.asarray(phi_grid, dtype=float))
    t_grid = np.asarray(t_grid, dtype=float)
    if phi_grid.size == 0 or t_grid.size < 2:
        raise ValueError("phi_grid must be nonempty and t_grid have >= 2 points")
    out = []
    for phi in phi_grid:
        r = bloch_magnitude(params, phi, t_grid)
        inc = np.diff(r)
        out.append((float(phi), float(np.sum(inc[inc > 0]))))
    return out


# --- refined single-qubit constant/balanced discrimination -----------------

class Gate(enum.Enum):
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"
    U4 = "U4"


CONSTANT_GATES = (Gate.U1, Gate.U2)
BALANCED_GATES = (Gate.U3, Gate.U4)

# y-rotation angle sandwiched between the two (-pi/2)_x rotations.
_GATE_Y_ANGLE = {Gate.U1: 0.0, Gate.U2: 2 * np.pi, Gate.U3: 3 * np.pi, Gate.U4: np.pi}


@dataclass(frozen=True)
class RDJAConfig:
    """Echo timing: wait t, pi pulse, wait tau, then read out."""

    t: float
    tau: float
    gate: Gate

    def __post_init__(self):
        if self.t < 0 or self.tau < 0:
            raise ValueError("t and tau must be >= 0")


def rotation(axis: str, angle: float) -> np.ndarray:
    """exp(-i angle sigma_axis / 2)."""
    sigma = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}[axis]
    return np.cos(angle / 2) * IDENTITY - 1j * np.sin(angle / 2) * sigma


def rdja_gate(gate: Gate | str) -> np.ndarray:
    """Phase gate (-pi/2)_x (theta)_y (-pi/2)_x as a 2x2 unitary."""
    gate = Gate(gate) if not isinstance(gate, Gate) else gate
    rx = rotation("x", -np.pi / 2)
    return rx @ rotation("y", _GATE_Y_ANGLE[gate]) @ rx


def is_balanced(gate: Gate | str) -> bool:
    gate = Gate(gate) if not isinstance(gate, Gate) else gate
    return gate in BALANCED_GATES


def rdja_kappa_eff(params: NVParams, phi: float, t: float, tau: float) -> complex:
    """Effective coherence factor for the echo sequence (wait t, pi, wait tau).

    The pi pulse conjugates the nuclear phase so pre- and post-pulse phases
    subtract; the residual envelope is not refocused and decays with t+tau.
    """
    c2 = np.cos(phi / 2) ** 2
    s2 = np.sin(phi / 2) ** 2
    phase = params.coupling * (t - tau) / 2
    return envelope(params, t + tau) * (c2 * np.exp(1j * phase) + s2 * np.exp(-1j * phase))


def rdja_p0(params: NVParams, phi: float, cfg: RDJAConfig) -> float:
    """Probability of reading |0> after gate, echo waits, and readout pulse.

    Closed form: P0 = (1 + s Re kappa_eff)/2 with s = +1 for balanced and
    s = -1 for constant gates; the echo pi pulse flips the noiseless
    outcome relative to the immediate-readout protocol.
    """
    s = 1.0 if is_balanced(cfg.gate) else -1.0
    k = rdja_kappa_eff(params, phi, cfg.t, cfg.tau)
    return 0.5 * (1 + s * k.real)


def rdja_contrast(params: NVParams, phi: float, t: float, tau: float) -> float:
    """Success contrast P0(balanced) - P0(constant) at the given timing."""
    balanced = rdja_p0(params, phi, RDJAConfig(t, tau, Gate.U3))
    constant = rdja_p0(params, phi, RDJAConfig(t, tau, Gate.U1))
    return balanced - constant


def rdja_success(params: NVParams, phi: float, t: float, tau_grid) -> list[tuple[float, float]]:
    """Contrast sweep over readout delays tau."""
    tau_grid = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    if tau_grid.size == 0:
        raise ValueError("tau_grid must be nonempty")
    return [(float(tau), rdja_contrast(params, phi, t, tau)) for tau in tau_grid]


def no_echo_contrast(params: NVParams, phi: float, t: float) -> float:
    """Immediate-readout baseline: no pi pulse, read out after waiting t."""
    return abs(nv_kappa(params, phi, t).real)
