"""Named experiment recipes reproducing the laboratory's standard figures.

Each preset expands to one or more labelled sweep configurations.  Where a
recipe needs an incommensurate modulation frequency it stores the exact ratio
(for example sqrt(3)/4 of the kick frequency) rather than a rounded frequency.
"""

from __future__ import annotations

import math

from .config import ExperimentConfig

__all__ = ["PRESETS", "preset_names", "describe_presets", "build_preset"]

_SQRT3_4 = math.sqrt(3.0) / 4.0
_FWHM_04_SIGMA = 0.4 / (2.0 * math.sqrt(2.0 * math.log(2.0)))  # FWHM 0.4 recoil


def _linspace(start: float, stop: float, count: int) -> tuple[float, ...]:
    step = (stop - start) / (count - 1)
    return tuple(start + i * step for i in range(count))


def _fig2() -> list[ExperimentConfig]:
    base = ExperimentConfig(
        kick_strength=2.0, ell=1, epsilon=0.0, kicks=14,
        initial_kind="gaussian", sigma_pr=0.05, members=32,
        n_max=512, sweep_axis="alpha", sweep_values=_linspace(0.0, 2.0 * math.pi, 50),
    )
    return [
        base.with_(label="r12", ratio=0.5, profile_order=1),
        base.with_(label="r14", ratio=0.25, profile_order=2),
    ]


def _fig3() -> list[ExperimentConfig]:
    base = ExperimentConfig(
        ell=1, epsilon=0.0, alpha=math.pi / 6,
        initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=32,
        n_max=512, sweep_axis="ratio", sweep_values=_linspace(0.45, 0.55, 41),
        kick_strength=2.0, kicks=14,
    )
    return [
        base.with_(label="kicks8", kick_strength=1.7, kicks=8),
        base.with_(label="kicks14", kick_strength=2.0, kicks=14),
        base.with_(label="kicks22", kick_strength=2.1, kicks=22),
    ]


def _fig5() -> list[ExperimentConfig]:
    return [ExperimentConfig(
        label="main", kick_strength=2.0, ell=1, epsilon=0.0,
        alpha=math.pi / 2, ratio=0.5, kicks=10,
        initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=32,
        n_max=512, sweep_axis="phi0", sweep_values=_linspace(0.0, 2.0 * math.pi, 50),
    )]


def _fig6() -> list[ExperimentConfig]:
    base = ExperimentConfig(
        kick_strength=2.0, ell=1, epsilon=0.0, alpha=math.pi / 6,
        initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=32,
        n_max=512, sweep_axis="ratio", sweep_values=_linspace(0.70, 0.80, 41),
        kicks=29,
    )
    return [
        base.with_(label="kicks28", kicks=28),
        base.with_(label="kicks29", kicks=29),
        base.with_(label="kicks30", kicks=30),
    ]


def _fig7() -> list[ExperimentConfig]:
    base = ExperimentConfig(
        kick_strength=0.65, ell=2, epsilon=0.0, ratio=_SQRT3_4, kicks=15,
        initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=32,
        n_max=512, sweep_axis="alpha", sweep_values=_linspace(0.0, 2.0 * math.pi / 3.0, 33),
    )
    return [
        base.with_(label="main"),
        base.with_(label="ratio_invpi", ratio=1.0 / math.pi),
        base.with_(label="ratio_invsqrt3", ratio=1.0 / math.sqrt(3.0)),
        base.with_(label="ratio_sqrt5_3", ratio=math.sqrt(5.0) / 3.0),
    ]


def _fig8() -> list[ExperimentConfig]:
    base = ExperimentConfig(
        kick_strength=0.65, ell=2, ratio=_SQRT3_4, kicks=30,
        initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=32,
        n_max=512, sweep_axis="epsilon", sweep_values=_linspace(-0.5, 0.5, 41),
    )
    return [
        base.with_(label="alpha0", alpha=0.0),
        base.with_(label="alpha_pi12", alpha=math.pi / 12),
        base.with_(label="alpha_pi6", alpha=math.pi / 6),
        base.with_(label="alpha_pi3", alpha=math.pi / 3),
    ]


def _fig9() -> list[ExperimentConfig]:
    return [ExperimentConfig(
        label="main", kick_strength=2.0, ell=2, epsilon=0.0, ratio=_SQRT3_4,
        kicks=300, initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=256,
        n_max=2048, sweep_axis="alpha",
        sweep_values=tuple(j * math.pi / 12 for j in range(13)),
        write_series=True, power_window=(30, 300), diffusion_window=(30, 300),
        effective_kick_column=True,
    )]


def _fig10() -> list[ExperimentConfig]:
    return [ExperimentConfig(
        label="main", kick_strength=3.0, ell=2, epsilon=0.4, ratio=_SQRT3_4,
        kicks=300, initial_kind="gaussian", sigma_pr=_FWHM_04_SIGMA, members=512,
        n_max=1024, sweep_axis="alpha",
        sweep_values=(0.0, math.pi / 12, math.pi / 6),
        write_series=True, snapshot_kicks=(70, 300),
        power_window=(70, 300), localization_kick=70,
    )]


# Poincare section recipes: (stochasticity k*eps, modulation amplitudes, ratio, phi0).
POINCARE_PRESETS: dict[str, tuple[float, tuple[float, ...], float, float]] = {
    "fig7": (0.1, (0.0, math.pi / 18, math.pi / 6, math.pi / 3), _SQRT3_4, 0.0),
}

PRESETS: dict[str, tuple[str, callable]] = {
    "fig2": ("induced-resonance energy vs modulation amplitude at ratio 1/2 and 1/4, "
             "14 kicks, overlaid with the harmonic-sum prediction", _fig2),
    "fig3": ("first-order resonance scan over the modulation ratio near 1/2 for "
             "8/14/22 kicks at k = 1.7/2.0/2.1", _fig3),
    "fig5": ("initial-phase scan at ratio 1/2, alpha = pi/2, 10 kicks, k = 2", _fig5),
    "fig6": ("even/odd kick-number comparison on the fractional resonance near "
             "ratio 3/4 at k = 2, ell = 1, alpha = pi/6 (28/29/30 kicks)", _fig6),
    "fig7": ("resonance fall-off vs phase-noise amplitude, 15 kicks at k = 0.65 on "
             "the ell = 2 resonance, several incommensurate ratios", _fig7),
    "fig8": ("pulse-period resonance curves for noise amplitudes 0..pi/3, 30 kicks, "
             "k = 0.65, ell = 2", _fig8),
    "fig9": ("noise on resonance: k = 2, eps = 0, ell = 2, 300 kicks, energy series "
             "and diffusion constant vs alpha", _fig9),
    "fig10": ("dynamical localization and its destruction: eps = 0.4, k = 3, ell = 2, "
              "300 kicks, momentum profiles at kick 70", _fig10),
}


def preset_names() -> list[str]:
    return list(PRESETS)


def describe_presets() -> list[tuple[str, str]]:
    return [(name, description) for name, (description, _) in PRESETS.items()]


def build_preset(name: str) -> list[ExperimentConfig]:
    """Expand a preset name into its labelled sweep configurations."""
    try:
        _, builder = PRESETS[name]
    except KeyError:
        known = ", ".join(PRESETS)
        raise KeyError(f"unknown preset {name!r}; known presets: {known}") from None
    return builder()
