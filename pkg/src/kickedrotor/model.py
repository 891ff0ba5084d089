"""Dimensionless kick parameters, unit conversions and kick-phase sequences.

The laboratory experiment is a train of short standing-wave pulses applied to
cold atoms.  Everything downstream works in scaled units: position in grating
radians, momentum in two-photon recoils, time in pulse periods.  This module
converts laboratory quantities into those units and generates the per-kick
phase offsets produced by sinusoidal modulation of the grating position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

HBAR = 1.054571817e-34  # J s

__all__ = [
    "HBAR",
    "PhysicalParams",
    "ScaledParams",
    "KickParams",
    "scaled_params",
    "nearest_resonance",
    "unscaled_period",
    "talbot_time",
    "phase_sequence",
    "effective_kick_strength",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory parameters of one kicking experiment, in SI units.

    ``detuning`` and ``rabi_frequency`` are angular frequencies (rad/s).
    """

    wavelength: float
    atomic_mass: float
    pulse_period: float
    pulse_duration: float
    detuning: float
    rabi_frequency: float

    def __post_init__(self) -> None:
        for name in (
            "wavelength",
            "atomic_mass",
            "pulse_period",
            "pulse_duration",
            "detuning",
            "rabi_frequency",
        ):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        # Pulses must be short against the period for the delta-kick treatment.
        if not self.pulse_duration < self.pulse_period / 10.0:
            raise ValueError(
                "pulse_duration must be < pulse_period/10 "
                f"(got tau={self.pulse_duration!r}, T={self.pulse_period!r})"
            )


class ScaledParams(NamedTuple):
    """Dimensionless parameters derived from :class:`PhysicalParams`."""

    kick_strength: float
    scaled_period: float
    epsilon: float
    ell: int


def nearest_resonance(scaled_period: float) -> tuple[int, float]:
    """Split a scaled pulse period into (ell, epsilon) with period = 2*pi*ell + epsilon.

    ``ell`` is the nearest integer multiple of 2*pi; the remainder satisfies
    |epsilon| < pi.  A period landing exactly half way between two multiples
    is rejected: both neighbours would be equally valid.
    """
    if not (scaled_period > 0.0) or not math.isfinite(scaled_period):
        raise ValueError(f"scaled_period must be positive, got {scaled_period!r}")
    ell = int(round(scaled_period / (2.0 * math.pi)))
    epsilon = scaled_period - 2.0 * math.pi * ell
    if abs(abs(epsilon) - math.pi) <= 1e-12 * math.pi:
        raise ValueError(
            f"scaled_period {scaled_period!r} is half way between resonances; "
            "the resonance index is ambiguous"
        )
    return ell, epsilon


def scaled_params(phys: PhysicalParams) -> ScaledParams:
    """Convert laboratory parameters to the dimensionless kick parameters.

    kick strength  k = tau * Omega^2 / (4 * Delta)
    scaled period  = 4 * hbar * k_L^2 * T / m   (k_L = 2*pi/wavelength)
    """
    k_l = 2.0 * math.pi / phys.wavelength
    kick = phys.pulse_duration * phys.rabi_frequency**2 / (4.0 * phys.detuning)
    period = 4.0 * HBAR * k_l**2 * phys.pulse_period / phys.atomic_mass
    ell, epsilon = nearest_resonance(period)
    return ScaledParams(kick, period, epsilon, ell)


def unscaled_period(scaled_period: float, wavelength: float, atomic_mass: float) -> float:
    """Invert the period scaling: laboratory pulse period in seconds."""
    k_l = 2.0 * math.pi / wavelength
    return scaled_period * atomic_mass / (4.0 * HBAR * k_l**2)


def talbot_time(wavelength: float, atomic_mass: float) -> float:
    """Pulse period at which all momentum orders rephase (scaled period 4*pi)."""
    return unscaled_period(4.0 * math.pi, wavelength, atomic_mass)


@dataclass(frozen=True)
class KickParams:
    """Dimensionless control parameters of one kicking experiment.

    ``ratio`` is the modulation frequency over the kick frequency; the phase
    offset of kick ``n`` is ``alpha * cos(2*pi*ratio*n + phi0)``.  The scaled
    pulse period is ``2*pi*ell + epsilon`` with |epsilon| < pi.
    """

    kick_strength: float
    ell: int
    epsilon: float = 0.0
    alpha: float = 0.0
    ratio: float = 0.0
    phi0: float = 0.0
    kicks: int = 1

    def __post_init__(self) -> None:
        if not math.isfinite(self.kick_strength):
            raise ValueError("kick_strength must be finite")
        if abs(self.epsilon) >= math.pi:
            raise ValueError(f"epsilon must satisfy |epsilon| < pi, got {self.epsilon!r}")
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha!r}")
        if self.ratio < 0.0:
            raise ValueError(f"ratio must be >= 0, got {self.ratio!r}")
        if self.kicks < 1:
            raise ValueError(f"kicks must be >= 1, got {self.kicks!r}")

    @property
    def scaled_period(self) -> float:
        return 2.0 * math.pi * self.ell + self.epsilon

    @classmethod
    def from_scaled_period(cls, kick_strength: float, scaled_period: float, **kwargs) -> "KickParams":
        """Build from the scaled period directly, picking the nearest resonance index."""
        ell, epsilon = nearest_resonance(scaled_period)
        return cls(kick_strength=kick_strength, ell=ell, epsilon=epsilon, **kwargs)

    def with_(self, **kwargs) -> "KickParams":
        return replace(self, **kwargs)


def phase_sequence(params: KickParams) -> np.ndarray:
    """Grating phase offset at each kick: alpha * cos(2*pi*ratio*n + phi0).

    Kick ``n`` fires at scaled time ``t = n``; the modulation is cosinusoidal
    with respect to kick 0, so ``phi0`` alone controls where in the modulation
    cycle the train starts.
    """
    n = np.arange(params.kicks)
    return params.alpha * np.cos(2.0 * math.pi * params.ratio * n + params.phi0)


def effective_kick_strength(phases: np.ndarray) -> float:
    """Amplitude of the summed phase gratings, in units of a single kick.

    A train of kicks whose free evolution rephases exactly acts like a single
    grating ``sum_n cos(x + phi_n)``; its amplitude is ``|sum_n exp(i phi_n)|``,
    between 0 (pairwise cancellation) and N (all in phase).
    """
    phases = np.asarray(phases, dtype=float)
    if phases.size < 1:
        raise ValueError("need at least one kick phase")
    return float(abs(np.exp(1j * phases).sum()))
