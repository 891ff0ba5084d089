"""Observable extraction and fitting on momentum distributions and energy series."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quantum import MomentumDistribution

__all__ = [
    "FitResult",
    "energy",
    "zero_momentum_fraction",
    "fit_power_law",
    "diffusion_constant",
    "localization_fit",
    "default_fit_window",
]

_NORM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class FitResult:
    """Outcome of a diagnostic fit.

    ``value`` is the power-law exponent for growth fits or the localization
    length (in two-recoil momentum units) for profile fits; ``window`` is the
    inclusive index range the fit used.
    """

    value: float
    r_squared: float
    window: tuple[int, int]

    def __post_init__(self) -> None:
        if self.window[0] > self.window[1]:
            raise ValueError(f"empty fit window {self.window!r}")


def _check_normalized(dist: MomentumDistribution) -> None:
    total = dist.total()
    if abs(total - 1.0) > _NORM_TOLERANCE:
        raise ValueError(f"distribution is not normalized (sum = {total!r})")


def energy(dist: MomentumDistribution) -> float:
    """Mean kinetic energy in recoil units: 4 * sum P(p) p^2 for p in two-recoil units."""
    _check_normalized(dist)
    return float(4.0 * (dist.probs * dist.momenta**2).sum())


def zero_momentum_fraction(dist: MomentumDistribution) -> float:
    """Probability within one photon recoil of rest (|p| < 1/2 in two-recoil units)."""
    _check_normalized(dist)
    return float(dist.probs[np.abs(dist.momenta) < 0.5].sum())


def _linear_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line y = a + b*x; returns (b, a, r_squared)."""
    coeffs = np.polyfit(x, y, 1)
    slope, intercept = float(coeffs[0]), float(coeffs[1])
    resid = y - (intercept + slope * x)
    ss_res = float((resid**2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_sq = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return slope, intercept, r_sq


def _window_slice(series: np.ndarray, window: tuple[int, int], min_points: int) -> np.ndarray:
    first, last = window
    if first < 0 or last >= series.size:
        raise ValueError(f"window {window!r} outside series of length {series.size}")
    if last - first + 1 < min_points:
        raise ValueError(f"window {window!r} has fewer than {min_points} points")
    return np.arange(first, last + 1)


def fit_power_law(series: np.ndarray, window: tuple[int, int]) -> FitResult:
    """Fit E ~ t^q over the inclusive kick-index window; index = kick number.

    Requires strictly positive energies and a window starting at kick 1 or
    later (kick 0 has no log abscissa).
    """
    series = np.asarray(series, dtype=float)
    idx = _window_slice(series, window, min_points=5)
    if window[0] < 1:
        raise ValueError("power-law window must start at kick 1 or later")
    values = series[idx]
    if not (values > 0.0).all():
        raise ValueError("power-law fit requires positive energies in the window")
    slope, _, r_sq = _linear_fit(np.log(idx.astype(float)), np.log(values))
    return FitResult(value=slope, r_squared=r_sq, window=window)


def diffusion_constant(series: np.ndarray, window: tuple[int, int]) -> float:
    """Linear growth rate of the energy series (recoil units per kick) over the window."""
    series = np.asarray(series, dtype=float)
    idx = _window_slice(series, window, min_points=5)
    slope, _, _ = _linear_fit(idx.astype(float), series[idx])
    return slope


def localization_fit(
    dist: MomentumDistribution,
    exclude_central: int = 5,
    floor_ratio: float = 1e-12,
) -> FitResult:
    """Fit an exponential profile P(n) ~ exp(-2|n|/xi) to a momentum distribution.

    The distribution is first binned onto integer orders.  Orders below
    ``floor_ratio`` of the peak are treated as unpopulated, and the central
    ``exclude_central`` orders are dropped so the initial-condition peak does
    not bias the wings.  Returns the localization length and the coefficient
    of determination of the semilog fit.
    """
    _check_normalized(dist)
    # Bin onto integer orders.
    n_lo = int(math.floor(dist.momenta.min() + 0.5))
    n_hi = int(math.ceil(dist.momenta.max() - 0.5))
    edges = np.arange(n_lo, n_hi + 2) - 0.5
    profile, _ = np.histogram(dist.momenta, bins=edges, weights=dist.probs)
    orders = np.arange(n_lo, n_hi + 1)

    populated = profile > floor_ratio * profile.max()
    for side in (orders < 0, orders > 0):
        if int((populated & side).sum()) < 20:
            raise ValueError("need at least 20 populated orders on each side of p = 0")

    half_width = (exclude_central - 1) // 2 if exclude_central > 0 else -1
    usable = populated & (np.abs(orders) > half_width)
    if int(usable.sum()) < 10:
        raise ValueError("fewer than 10 usable points; localization fit is inconclusive")

    abs_n = np.abs(orders[usable]).astype(float)
    slope, _, r_sq = _linear_fit(abs_n, np.log(profile[usable]))
    xi = math.inf if slope == 0.0 else -2.0 / slope
    n_window = (int(abs_n.min()), int(abs_n.max()))
    return FitResult(value=xi, r_squared=r_sq, window=n_window)


def default_fit_window(n_kicks: int) -> tuple[int, int]:
    """Late-time window skipping the first third of the series (quantum break time)."""
    return max(1, math.ceil(n_kicks / 3)), n_kicks
