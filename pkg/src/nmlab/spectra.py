"""Frequency-domain reservoir engineering for qubit dephasing.

A dephasing qubit keeps its populations and multiplies its coherence by a
decoherence function kappa(t), which is the (phase-weighted) Fourier
transform of the environmental frequency density. This module provides the
closed-form double-Gaussian magnitude, numerical quadrature of arbitrary
engineered spectra, the induced dephasing channel, the trace-distance
(information backflow) functional, and inverse synthesis of a spectrum
realizing a prescribed kappa(t).

Frequency conventions: the kernel is exp(i * omega * delta_n * t) by
default; pass two_pi=True to use exp(i * 2*pi * delta_n * omega * t)
instead. Both appear in the photonic-dephasing literature.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import qcore

DENSITY_NORM_TOL = 1e-8
KAPPA_MAG_TOL = 1e-9


def _kernel_scale(delta_n: float, two_pi: bool) -> float:
    return 2 * np.pi * delta_n if two_pi else delta_n


@dataclass(frozen=True)
class DoubleGaussianSpec:
    """Two-Gaussian frequency density with peak-height ratio a_theta.

    Peak weights are 1/(1+a_theta) and a_theta/(1+a_theta); both peaks have
    width sigma and their centers are separated by delta_omega. a_theta = 0
    gives a single peak (Markovian Gaussian decay), a_theta = 1 equal peaks
    (damped oscillations, non-Markovian for delta_omega > sigma).
    """

    a_theta: float
    sigma: float
    delta_omega: float
    delta_n: float

    def __post_init__(self):
        if self.a_theta < 0:
            raise ValueError("a_theta must be >= 0")
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if self.delta_omega < 0:
            raise ValueError("delta_omega must be >= 0")
        if self.delta_n == 0:
            raise ValueError("delta_n must be nonzero")


@dataclass(frozen=True)
class SpectralProfile:
    """Uniform frequency grid with probability density and phase values."""

    omega: np.ndarray
    density: np.ndarray
    phase: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        density = np.asarray(self.density, dtype=float)
        phase = np.asarray(self.phase, dtype=float)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "density", density)
        object.__setattr__(self, "phase", phase)
        if omega.ndim != 1 or omega.size < 2:
            raise ValueError("omega grid must be 1-D with at least 2 points")
        if density.shape != omega.shape or phase.shape != omega.shape:
            raise ValueError("density and phase must match the omega grid")
        d = np.diff(omega)
        if np.any(d <= 0) or np.max(np.abs(d - d[0])) > 1e-9 * abs(d[0]):
            raise ValueError("omega grid must be strictly increasing and uniform")
        if np.min(density) < 0:
            raise ValueError("density must be nonnegative")
        total = np.trapezoid(density, omega)
        if abs(total - 1.0) > DENSITY_NORM_TOL:
            raise ValueError(f"density must integrate to 1 (got {total})")

    @property
    def step(self) -> float:
        return float(self.omega[1] - self.omega[0])


@dataclass(frozen=True)
class DecoherenceTrajectory:
    """Complex decoherence function sampled on a uniform time grid."""

    t: np.ndarray
    kappa: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        kappa = np.asarray(self.kappa, dtype=complex)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "kappa", kappa)
        if t.ndim != 1 or t.size < 2:
            raise ValueError("time grid must be 1-D with at least 2 points")
        if kappa.shape != t.shape:
            raise ValueError("kappa must match the time grid")
        if np.max(np.abs(kappa)) > 1 + KAPPA_MAG_TOL:
            raise ValueError("|kappa| must not exceed 1")
        if abs(t[0]) < 1e-15 and abs(kappa[0] - 1.0) > KAPPA_MAG_TOL:
            raise ValueError("kappa(0) must equal 1")

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.kappa)


def kappa_double_gaussian_mag(spec: DoubleGaussianSpec, t):
    """|kappa(t)| for the double-Gaussian frequency density (closed form).

    exp(-sigma^2 (dn t)^2 / 2) / (1+A) * sqrt(1 + A^2 + 2 A cos(dw dn t)).
    Accepts scalar or array t >= 0.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    a = spec.a_theta
    envelope = np.exp(-0.5 * spec.sigma**2 * (spec.delta_n * t) ** 2)
    osc = np.sqrt(1 + a * a + 2 * a * np.cos(spec.delta_omega * spec.delta_n * t))
    out = envelope * osc / (1 + a)
    return float(out) if out.ndim == 0 else out


def double_gaussian_profile(
    spec: DoubleGaussianSpec, n_points: int = 4096, span: float = 6.0, center: float = 0.0
) -> SpectralProfile:
    """Tabulate the double-Gaussian density on a uniform grid (phase = 0).

    The grid spans both peaks plus `span` widths on each side; the density
    is renormalized to unit trapezoidal integral to absorb tail truncation.
    """
    half = spec.delta_omega / 2 + span * spec.sigma
    omega = np.linspace(center - half, center + half, n_points)
    a = spec.a_theta
    w1, w2 = 1 / (1 + a), a / (1 + a)
    g1 = np.exp(-0.5 * ((omega - (center - spec.delta_omega / 2)) / spec.sigma) ** 2)
    g2 = np.exp(-0.5 * ((omega - (center + spec.delta_omega / 2)) / spec.sigma) ** 2)
    density = (w1 * g1 + w2 * g2) / (spec.sigma * np.sqrt(2 * np.pi))
    density = density / np.trapezoid(density, omega)
    return SpectralProfile(omega=omega, density=density, phase=np.zeros_like(omega))


def kappa_numeric(profile: SpectralProfile, delta_n: float, t, two_pi: bool = False):
    """Decoherence function by trapezoidal quadrature of the spectral integral.

    kappa(t) = int density(w) exp(i phase(w)) exp(i w * dn * t) dw
    (with dn replaced by 2*pi*dn when two_pi is set). Vectorized over t.
    """
    t = np.asarray(t, dtype=float)
    scale = _kernel_scale(delta_n, two_pi)
    weights = np.full(profile.omega.size, profile.step)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    g = profile.density * np.exp(1j * profile.phase) * weights
    phases = np.exp(1j * scale * np.outer(t, profile.omega))
    out = phases @ g
    return complex(out[0]) if t.ndim == 0 else out


@dataclass(frozen=True)
class DephasingChannel:
    """Qubit map multiplying the coherence by a fixed complex kappa."""

    kappa: complex

    def __post_init__(self):
        if abs(self.kappa) > 1 + KAPPA_MAG_TOL:
            raise ValueError(f"|kappa| = {abs(self.kappa)} exceeds 1: unphysical")

    def apply(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError(f"dephasing channel needs a 2x2 state, got {rho.shape}")
        out = rho.copy()
        out[0, 1] *= np.conj(self.kappa)
        out[1, 0] *= self.kappa
        return out

    def as_pauli(self) -> qcore.PauliChannel:
        """Equivalent Pauli channel; only defined for real kappa."""
        if abs(np.imag(self.kappa)) > 1e-14:
            raise ValueError("only real kappa maps to a Pauli-diagonal channel")
        k = float(np.real(self.kappa))
        return qcore.PauliChannel(k, k, 1.0)


def dephasing_channel(kappa: complex) -> DephasingChannel:
    return DephasingChannel(kappa=complex(kappa))


def blp_from_magnitudes(mag) -> float:
    """Sum of positive increments of a sampled coherence magnitude."""
    mag = np.asarray(mag, dtype=float)
    if mag.size < 2:
        raise ValueError("need at least 2 samples")
    inc = np.diff(mag)
    return float(np.sum(inc[inc > 0]))


def blp_measure(traj: DecoherenceTrajectory) -> float:
    """Discrete trace-distance non-Markovianity of a dephasing trajectory.

    For pure dephasing the optimal state pair is antipodal on the equator,
    for which the trace distance equals |kappa|; the measure is the total
    revival (sum of increases) of |kappa| over the grid.
    """
    return blp_from_magnitudes(traj.magnitude)


@dataclass(frozen=True)
class SynthesisResult:
    """Spectrum recovered from a target decoherence function."""

    profile: SpectralProfile
    delta_n: float
    roundtrip_error: float
    realizable: bool
    two_pi: bool = False


def synthesize_spectrum(
    traj: DecoherenceTrajectory,
    delta_n: float,
    two_pi: bool = False,
    roundtrip_tol: float = 1e-6,
) -> SynthesisResult:
    """Recover a spectral density and phase realizing a target kappa(t).

    Inverse DFT of kappa onto the conjugate (Nyquist-matched) frequency
    grid of the time grid. The recovered complex amplitude G(w) is split
    into density = |G| (renormalized to unit integral) and phase = arg G.
    The forward quadrature is re-run on the result; if the worst-case
    round-trip error exceeds roundtrip_tol (e.g. the time window is too
    short for kappa to decay, or kappa is not realizable by a positive
    density) the `realizable` flag is False.
    """
    t = traj.t
    dt = t[1] - t[0]
    if np.max(np.abs(np.diff(t) - dt)) > 1e-9 * dt:
        raise ValueError("time grid must be uniform")
    if t.size < 3:
        raise ValueError("need at least 3 time samples")
    scale = _kernel_scale(delta_n, two_pi)
    # Hermitian extension to negative times: keeps the DFT reconstruction
    # exact at the original nodes while making the recovered spectrum of a
    # realizable (decayed, gauge-aligned) target real and nonnegative.
    extended = np.concatenate([traj.kappa, np.conj(traj.kappa[-2:0:-1])])
    n = extended.size
    # DFT coefficients: kappa_m = sum_k c_k exp(i w_k * scale * t_m) exactly
    # on the grid, with w_k the fftfreq conjugate grid.
    c = np.fft.fft(extended) / n
    omega = 2 * np.pi * np.fft.fftfreq(n, d=dt) / scale
    order = np.argsort(omega)
    omega = omega[order]
    c = c[order]
    d_omega = omega[1] - omega[0]
    g = c / d_omega
    density = np.abs(g)
    phase = np.angle(g)
    norm = np.trapezoid(density, omega)
    profile = SpectralProfile(omega=omega, density=density / norm, phase=phase)
    kappa_back = kappa_numeric(profile, delta_n, t, two_pi=two_pi)
    err = float(np.max(np.abs(kappa_back - traj.kappa)))
    return SynthesisResult(
        profile=profile,
        delta_n=delta_n,
        roundtrip_error=err,
        realizable=err <= roundtrip_tol,
        two_pi=two_pi,
    )


# --- CSV interchange -------------------------------------------------------

def write_profile_csv(profile: SpectralProfile, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["omega", "density", "phase"])
        for w, d, p in zip(profile.omega, profile.density, profile.phase):
            writer.writerow([repr(float(w)), repr(float(d)), repr(float(p))])


def read_profile_csv(path) -> SpectralProfile:
    omega, density, phase = [], [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            omega.append(float(row["omega"]))
            density.append(float(row["density"]))
            phase.append(float(row["phase"]))
    return SpectralProfile(
        omega=np.array(omega), density=np.array(density), phase=np.array(phase)
    )


def write_trajectory_csv(traj: DecoherenceTrajectory, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "re_kappa", "im_kappa"])
        for t, k in zip(traj.t, traj.kappa):
            writer.writerow([repr(float(t)), repr(float(k.real)), repr(float(k.imag))])


def read_trajectory_csv(path) -> DecoherenceTrajectory:
    ts, ks = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            ts.append(float(row["t"]))
            ks.append(float(row["re_kappa"]) + 1j * float(row["im_kappa"]))
    return DecoherenceTrajectory(t=np.array(ts), kappa=np.array(ks))
