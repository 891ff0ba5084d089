"""Split-step propagation of momentum-ladder states under a pulsed grating.

A kick multiplies the wavefunction by ``exp(-i k cos(x + phi))`` in position
space; free flight multiplies by ``exp(-i tau (n + beta)^2 / 2)`` in momentum
space, with ``tau`` the scaled pulse period.  The two are connected by an FFT
pair over one grating period.  The quasimomentum ``beta`` (momentum modulo one
two-photon recoil) is conserved, so a state lives on a single ladder
``p = n + beta`` and a spread-out initial cloud becomes an incoherent ensemble
of independent ladders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import ndtr, ndtri

from .model import KickParams, phase_sequence

__all__ = [
    "DEFAULT_GRID",
    "EDGE_TOLERANCE",
    "GridAdequacyError",
    "PlaneWave",
    "GaussianEnsemble",
    "InitialCondition",
    "LadderState",
    "MomentumDistribution",
    "Trajectory",
    "init_state",
    "apply_kick",
    "apply_free",
    "evolve",
    "momentum_distribution",
]

DEFAULT_GRID = 2048
EDGE_TOLERANCE = 1e-8
# Largest Gaussian tail mass we accept outside the quasimomentum zone [-1/2, 1/2).
_MAX_FOLDED_MASS = 1e-3


class GridAdequacyError(RuntimeError):
    """Probability reached the edge of the momentum grid; enlarge n_max."""


@dataclass(frozen=True)
class PlaneWave:
    """Single ladder starting at rest on quasimomentum ``beta``."""

    beta: float = 0.0

    def __post_init__(self) -> None:
        if not (-0.5 <= self.beta < 0.5):
            raise ValueError(f"beta must lie in [-1/2, 1/2), got {self.beta!r}")


@dataclass(frozen=True)
class GaussianEnsemble:
    """Incoherent ensemble of rest ladders with Gaussian quasimomentum spread.

    ``sigma_pr`` is the momentum standard deviation in single-photon-recoil
    units (half the internal two-recoil unit).  With ``seed`` None the betas
    are deterministic stratified quantiles (equal-weight members at quantile
    midpoints); with an integer seed they are pseudo-random draws.
    """

    sigma_pr: float
    members: int = 64
    seed: int | None = None

    def __post_init__(self) -> None:
        if not (self.sigma_pr > 0.0):
            raise ValueError(f"sigma_pr must be > 0, got {self.sigma_pr!r}")
        if self.members < 1:
            raise ValueError(f"members must be >= 1, got {self.members!r}")

    @classmethod
    def from_fwhm(cls, fwhm_pr: float, members: int = 64, seed: int | None = None) -> "GaussianEnsemble":
        sigma = fwhm_pr / (2.0 * math.sqrt(2.0 * math.log(2.0)))
        return cls(sigma_pr=sigma, members=members, seed=seed)


InitialCondition = Union[PlaneWave, GaussianEnsemble]


@dataclass
class LadderState:
    """Complex amplitudes on the momentum ladder n + beta, n = -n_max..n_max."""

    beta: float
    amplitudes: np.ndarray

    @property
    def n_max(self) -> int:
        return (self.amplitudes.size - 1) // 2

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    @property
    def momenta(self) -> np.ndarray:
        return self.orders + self.beta

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(self.populations().sum())

    def energy(self) -> float:
        """Kinetic energy in recoil units: 4 * <(n + beta)^2>."""
        return float(4.0 * (self.populations() * self.momenta**2).sum())


@dataclass
class MomentumDistribution:
    """Probability over momenta p = n + beta, either point-resolved or binned."""

    momenta: np.ndarray
    probs: np.ndarray

    def total(self) -> float:
        return float(self.probs.sum())


@dataclass
class Trajectory:
    """Per-kick observables plus the final ensemble momentum distribution.

    Index 0 of the series is the state before any kick; index t is after t
    full kick-plus-free steps.
    """

    energies: np.ndarray
    p0_fractions: np.ndarray
    final_distribution: MomentumDistribution
    snapshots: dict[int, MomentumDistribution] = field(default_factory=dict)


def _ensemble_betas(ic: GaussianEnsemble) -> np.ndarray:
    sigma = ic.sigma_pr / 2.0  # convert to two-recoil units
    folded_mass = 2.0 * (1.0 - ndtr(0.5 / sigma))
    if folded_mass > _MAX_FOLDED_MASS:
        raise ValueError(
            f"sigma_pr={ic.sigma_pr!r} puts {folded_mass:.2e} of the cloud outside "
            "the quasimomentum zone; this model does not fold momenta"
        )
    if ic.seed is None:
        quantiles = (np.arange(ic.members) + 0.5) / ic.members
        betas = sigma * ndtri(quantiles)
    else:
        rng = np.random.default_rng(ic.seed)
        betas = sigma * rng.standard_normal(ic.members)
        for _ in range(100):
            bad = np.abs(betas) >= 0.5
            if not bad.any():
                break
            betas[bad] = sigma * rng.standard_normal(int(bad.sum()))
    if np.abs(betas).max(initial=0.0) >= 0.5:
        raise ValueError("sampled quasimomenta fall outside [-1/2, 1/2); reduce members or sigma")
    return betas


def init_state(ic: InitialCondition, n_max: int) -> list[tuple[float, LadderState]]:
    """Weighted ladder ensemble for an initial condition; every member starts at rest."""
    if n_max < 8:
        raise ValueError(f"n_max must be >= 8, got {n_max}")
    if isinstance(ic, PlaneWave):
        betas = np.array([ic.beta])
    elif isinstance(ic, GaussianEnsemble):
        betas = _ensemble_betas(ic)
    else:
        raise TypeError(f"unsupported initial condition {ic!r}")
    weight = 1.0 / betas.size
    members = []
    for beta in betas:
        amps = np.zeros(2 * n_max + 1, dtype=complex)
        amps[n_max] = 1.0
        members.append((weight, LadderState(float(beta), amps)))
    return members


def _check_edges(populations_at_edges: np.ndarray, context: str) -> None:
    worst = float(populations_at_edges.max())
    if worst >= EDGE_TOLERANCE:
        raise GridAdequacyError(
            f"edge occupation {worst:.3e} exceeds {EDGE_TOLERANCE:.0e} {context}; "
            "the momentum grid is too small for these parameters"
        )


def apply_kick(state: LadderState, kick_strength: float, phase: float = 0.0) -> LadderState:
    """One grating pulse: multiply by exp(-i k cos(x + phase)) in position space."""
    m = state.amplitudes.size
    x = 2.0 * math.pi * np.arange(m) / m
    psi = np.fft.ifft(np.fft.ifftshift(state.amplitudes), norm="ortho")
    psi *= np.exp(-1j * kick_strength * np.cos(x + phase))
    amps = np.fft.fftshift(np.fft.fft(psi, norm="ortho"))
    new = LadderState(state.beta, amps)
    pops = new.populations()
    _check_edges(np.array([pops[0], pops[-1]]), "after a kick")
    return new


def apply_free(state: LadderState, scaled_period: float) -> LadderState:
    """Free flight for one pulse period: phase exp(-i tau (n+beta)^2 / 2) per order."""
    phases = np.exp(-0.5j * scaled_period * state.momenta**2)
    return LadderState(state.beta, state.amplitudes * phases)


def _point_distribution(weights: np.ndarray, betas: np.ndarray, pops: np.ndarray,
                        orders: np.ndarray) -> MomentumDistribution:
    momenta = (orders[None, :] + betas[:, None]).ravel()
    probs = (weights[:, None] * pops).ravel()
    total = probs.sum()
    if total > 0.0:
        probs = probs / total
    order = np.argsort(momenta, kind="stable")
    return MomentumDistribution(momenta[order], probs[order])


def evolve(
    ic: InitialCondition,
    params: KickParams,
    n_max: int = DEFAULT_GRID,
    snapshot_kicks: tuple[int, ...] = (),
) -> Trajectory:
    """Propagate an initial condition through the full kick train.

    Records the ensemble-averaged energy (recoil units) and the fraction of
    probability within one photon recoil of rest after every kick, plus the
    final momentum distribution resolved over quasimomentum.  Optional
    ``snapshot_kicks`` stores the distribution after the named kicks as well.

    Ensemble members evolve as one vectorized batch; the result is identical
    to composing :func:`apply_kick` and :func:`apply_free` member by member.
    """
    members = init_state(ic, n_max)
    weights = np.array([w for w, _ in members])
    betas = np.array([s.beta for _, s in members])
    m = 2 * n_max + 1

    # Batch stored in FFT axis order to avoid per-kick shifts.
    orders_fft = np.concatenate([np.arange(0, n_max + 1), np.arange(-n_max, 0)])
    amps = np.zeros((betas.size, m), dtype=complex)
    amps[:, 0] = 1.0

    x = 2.0 * math.pi * np.arange(m) / m
    momenta = orders_fft[None, :] + betas[:, None]
    momenta_sq = momenta**2
    free_factor = np.exp(-0.5j * params.scaled_period * momenta_sq)
    near_rest = np.abs(momenta) < 0.5

    phases = phase_sequence(params)
    n_kicks = params.kicks
    energies = np.empty(n_kicks + 1)
    p0_fractions = np.empty(n_kicks + 1)
    snapshots: dict[int, MomentumDistribution] = {}
    wanted = {int(t) for t in snapshot_kicks}

    def record(t: int) -> np.ndarray:
        pops = np.abs(amps) ** 2
        energies[t] = 4.0 * float((weights[:, None] * pops * momenta_sq).sum())
        p0_fractions[t] = float((weights[:, None] * pops * near_rest).sum())
        return pops

    pops = record(0)
    edge = np.array([n_max, n_max + 1])  # fft-order positions of +/- n_max
    for t, phi in enumerate(phases, start=1):
        psi = np.fft.ifft(amps, axis=1, norm="ortho")
        psi *= np.exp(-1j * params.kick_strength * np.cos(x + phi))[None, :]
        amps = np.fft.fft(psi, axis=1, norm="ortho")
        pops = np.abs(amps) ** 2
        _check_edges(pops[:, edge], f"at kick {t} of {n_kicks}")
        amps *= free_factor
        pops = record(t)
        if t in wanted:
            snapshots[t] = _point_distribution(weights, betas, pops, orders_fft)

    final = _point_distribution(weights, betas, pops, orders_fft)
    return Trajectory(energies, p0_fractions, final, snapshots)


def momentum_distribution(traj: Trajectory, beta_resolution: int = 1) -> MomentumDistribution:
    """Bin the final distribution into bins of width 1/beta_resolution.

    Bin centres sit on integer multiples of the width, so with the default
    resolution the bins are centred on the integer momentum orders.
    """
    if beta_resolution < 1:
        raise ValueError(f"beta_resolution must be >= 1, got {beta_resolution}")
    dist = traj.final_distribution
    width = 1.0 / beta_resolution
    j_min = int(math.floor(dist.momenta.min() / width + 0.5))
    j_max = int(math.ceil(dist.momenta.max() / width - 0.5))
    edges = (np.arange(j_min, j_max + 2) - 0.5) * width
    counts, _ = np.histogram(dist.momenta, bins=edges, weights=dist.probs)
    centers = np.arange(j_min, j_max + 1) * width
    total = counts.sum()
    if total > 0.0:
        counts = counts / total
    return MomentumDistribution(centers, counts)
