"""Area-preserving map describing dynamics close to a quantum resonance.

Near a resonance the quantum evolution reduces to a classical kicked map in
rescaled action-angle coordinates, with the detuning from resonance playing
the role of an effective Planck constant.  Only the product of kick strength
and detuning enters the map, so orbits obey a one-parameter scaling law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import KickParams, phase_sequence

__all__ = [
    "PhaseSpacePoint",
    "to_pseudoclassical",
    "map_step",
    "iterate_orbit",
    "default_seed_grid",
    "poincare_section",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Momentum-like coordinate J (unbounded) and angle theta in [0, 2*pi)."""

    J: float
    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", self.theta % _TWO_PI)


def to_pseudoclassical(n: int, beta: float, x: float, params: KickParams) -> PhaseSpacePoint:
    """Map ladder coordinates (integer momentum n, quasimomentum beta, position x)
    to the rescaled phase-space point.

    J = epsilon*n + pi*ell + tau*beta; the angle picks up a half-turn when the
    detuning is negative.  Undefined exactly on resonance.
    """
    eps = params.epsilon
    if eps == 0.0:
        raise ValueError("pseudo-classical coordinates are undefined at epsilon = 0")
    j = eps * n + math.pi * params.ell + params.scaled_period * beta
    theta = x + math.pi * (1.0 - math.copysign(1.0, eps)) / 2.0
    return PhaseSpacePoint(j, theta)


def map_step(pt: PhaseSpacePoint, k_eps: float, phi: float = 0.0) -> PhaseSpacePoint:
    """One step of the kicked map: impulse from the current angle, then rotation.

    J' = J + k_eps * sin(theta + phi);  theta' = theta + J'  (mod 2*pi).
    ``k_eps`` is the stochasticity parameter, the product of kick strength and
    absolute detuning; ``phi`` shifts the kick potential like the quantum
    grating phase.
    """
    if k_eps < 0.0:
        raise ValueError(f"k_eps must be >= 0, got {k_eps!r}")
    j_new = pt.J + k_eps * math.sin(pt.theta + phi)
    return PhaseSpacePoint(j_new, pt.theta + j_new)


def iterate_orbit(
    pt: PhaseSpacePoint, k_eps: float, phases: np.ndarray, steps: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Iterate one seed through a phase sequence; returns (J, theta) arrays.

    Index 0 is the seed itself; ``phases`` is cycled if shorter than ``steps``.
    """
    phases = np.asarray(phases, dtype=float)
    if steps is None:
        steps = phases.size
    js = np.empty(steps + 1)
    thetas = np.empty(steps + 1)
    js[0], thetas[0] = pt.J, pt.theta
    current = pt
    for t in range(steps):
        current = map_step(current, k_eps, phases[t % phases.size])
        js[t + 1], thetas[t + 1] = current.J, current.theta
    return js, thetas


def default_seed_grid(per_axis: int = 40) -> list[PhaseSpacePoint]:
    """Uniform per_axis x per_axis seed grid over [0, 2*pi) x [0, 2*pi)."""
    ticks = _TWO_PI * np.arange(per_axis) / per_axis
    return [PhaseSpacePoint(float(j), float(th)) for j in ticks for th in ticks]


def poincare_section(
    k_eps: float,
    alpha: float,
    ratio: float,
    phi0: float,
    init_grid: list[PhaseSpacePoint],
    steps: int = 500,
) -> tuple[np.ndarray, np.ndarray]:
    """Iterate a seed grid under the modulated map and fold onto the 2*pi torus.

    Returns (J, theta) arrays of shape (seeds, steps + 1), ordered by seed
    index then step index.  The kick phases follow the same cosinusoidal
    sequence as the quantum train.
    """
    if not init_grid:
        raise ValueError("init_grid must contain at least one seed")
    # kick_strength/ell are irrelevant here; reuse KickParams for the sequence.
    seq_params = KickParams(kick_strength=1.0, ell=1, alpha=alpha, ratio=ratio,
                            phi0=phi0, kicks=max(steps, 1))
    phases = phase_sequence(seq_params)
    js = np.empty((len(init_grid), steps + 1))
    thetas = np.empty((len(init_grid), steps + 1))
    for i, seed in enumerate(init_grid):
        j_orbit, theta_orbit = iterate_orbit(seed, k_eps, phases, steps)
        js[i] = j_orbit
        thetas[i] = theta_orbit
    return js % _TWO_PI, thetas % _TWO_PI
