"""Analytic spectral treatment of the sinusoidally phase-modulated kick train.

Because the kicks sample the modulation once per period, everything aliases
into [0, 1/2] in units of the kick frequency.  The modulated train carries
Bessel-weighted harmonics of the modulation frequency; the harmonics that
alias onto half the kick frequency drive the induced resonance, and their
summed weight predicts the resonance energy as a function of modulation
amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np
from scipy.special import jv

__all__ = [
    "ModulationSpectrum",
    "modulation_spectrum",
    "resonance_frequencies",
    "aliased_ratio",
    "resonance_energy_profile",
    "alias_histogram",
]

_I_POWERS = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)

Ratio = Union[float, Fraction]


def _unit_power(kappa: int) -> complex:
    """i**kappa for integer kappa, exact for all signs."""
    return _I_POWERS[kappa % 4]


@dataclass(frozen=True)
class ModulationSpectrum:
    """Harmonic content of exp(i*alpha*cos(w_p*t)): weight(kappa) = i^kappa J_kappa(alpha).

    Weights are stored for kappa = -max_order .. max_order.  Because
    J_{-kappa} = (-1)^kappa J_kappa, the weights are symmetric in kappa.
    """

    amplitude: float
    weights: np.ndarray

    @property
    def max_order(self) -> int:
        return (self.weights.size - 1) // 2

    @property
    def orders(self) -> np.ndarray:
        k = self.max_order
        return np.arange(-k, k + 1)

    def weight(self, kappa: int) -> complex:
        k = self.max_order
        if abs(kappa) > k:
            raise IndexError(f"harmonic index {kappa} outside [-{k}, {k}]")
        return complex(self.weights[kappa + k])

    @property
    def power(self) -> np.ndarray:
        return np.abs(self.weights) ** 2


def modulation_spectrum(alpha: float, max_order: int) -> ModulationSpectrum:
    """Bessel-weighted harmonic spectrum of the phase factor, up to ``max_order``."""
    if max_order < 0:
        raise ValueError(f"max_order must be >= 0, got {max_order}")
    orders = np.arange(-max_order, max_order + 1)
    phases = np.array([_unit_power(int(k)) for k in orders])
    weights = phases * jv(orders, alpha)
    return ModulationSpectrum(amplitude=float(alpha), weights=weights)


def resonance_frequencies(n_max: int, m_max: int) -> list[Fraction]:
    """Modulation/kick frequency ratios (2n+1)/(2m) that can induce a resonance.

    Enumerates n = 0..n_max and m = 1..m_max, deduplicates equal ratios and
    returns them sorted.  All returned ratios alias onto 1/2 after folding by
    some integer harmonic.
    """
    if n_max < 1 or m_max < 1:
        raise ValueError("n_max and m_max must be >= 1")
    ratios = {
        Fraction(2 * n + 1, 2 * m)
        for n in range(n_max + 1)
        for m in range(1, m_max + 1)
    }
    return sorted(ratios)


def aliased_ratio(r: Ratio) -> Ratio:
    """Fold a frequency ratio into [0, 1/2]: reduce mod 1, reflect the upper half.

    Kicks sample the modulation once per period, so only the folded ratio is
    physical.  Fractions fold exactly and stay Fractions.
    """
    if r < 0:
        raise ValueError(f"ratio must be >= 0, got {r!r}")
    folded = r % 1
    if folded > Fraction(1, 2):
        folded = 1 - folded
    return folded


def _default_top_term(alpha: float, m: int) -> int:
    # Bessel orders beyond |alpha| + 40 are far below 1e-12 for the amplitudes
    # used here; include every harmonic m*(2n+1) up to that point.
    limit = abs(alpha) + 40.0
    n = 0
    while m * (2 * n + 1) <= limit:
        n += 1
    return n


def resonance_energy_profile(alpha: float, m: int, n_terms: int | None = None) -> float:
    """Relative energy of an m-th order induced resonance vs modulation amplitude.

    Sums the aliasing harmonics m*(2n+1) of the modulation spectrum for
    n = 0..n_terms and returns the squared modulus.  Un-normalized: callers
    scanning alpha usually rescale to a maximum of 1.
    """
    if m < 1:
        raise ValueError(f"resonance order m must be >= 1, got {m}")
    if n_terms is None:
        n_terms = _default_top_term(alpha, m)
    elif n_terms < 0:
        raise ValueError(f"n_terms must be >= 0, got {n_terms}")
    orders = m * (2 * np.arange(n_terms + 1) + 1)
    phases = np.array([_unit_power(int(k)) for k in orders])
    total = complex((phases * jv(orders, alpha)).sum())
    return abs(total) ** 2


def alias_histogram(r: float, harmonics: int, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Histogram of the folded positions of the first ``harmonics`` multiples of r.

    Rational ratios populate a handful of bins; irrational ratios spread close
    to uniformly over [0, 1/2], which is what makes them usable as white phase
    noise.  Bins are left-closed; the boundary value 1/2 lands in the last bin.
    Returns (counts, bin_edges).
    """
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    if harmonics < bins:
        raise ValueError(f"need at least as many harmonics as bins ({harmonics} < {bins})")
    if r < 0:
        raise ValueError(f"ratio must be >= 0, got {r!r}")
    multiples = np.arange(1, harmonics + 1) * float(r)
    folded = multiples % 1.0
    folded = np.where(folded > 0.5, 1.0 - folded, folded)
    counts, edges = np.histogram(folded, bins=bins, range=(0.0, 0.5))
    return counts, edges
