import math
from fractions import Fraction

import numpy as np
import pytest

from kickedrotor.spectral import (
    alias_histogram,
    aliased_ratio,
    modulation_spectrum,
    resonance_energy_profile,
    resonance_frequencies,
)

from oracles import bessel_j


class TestModulationSpectrum:
    def test_unmodulated_carrier(self):
        spec = modulation_spectrum(0.0, 6)
        assert spec.weight(0) == pytest.approx(1.0, abs=1e-15)
        for kappa in range(1, 7):
            assert abs(spec.weight(kappa)) == pytest.approx(0.0, abs=1e-15)
            assert abs(spec.weight(-kappa)) == pytest.approx(0.0, abs=1e-15)

    def test_first_harmonic_against_series_oracle(self):
        spec = modulation_spectrum(math.pi / 2, 8)
        assert abs(spec.weight(1)) == pytest.approx(bessel_j(1, math.pi / 2), abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.3, 1.0, math.pi / 2, 2 * math.pi, 4 * math.pi])
    def test_weights_match_series_oracle(self, alpha):
        spec = modulation_spectrum(alpha, 200)
        for kappa in (0, 1, 2, 5, 17, 60, 200):
            expected = (1j) ** (kappa % 4) * bessel_j(kappa, alpha)
            assert spec.weight(kappa) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 0.7, math.pi / 2, 3.0])
    def test_symmetric_in_harmonic_index(self, alpha):
        spec = modulation_spectrum(alpha, 12)
        for kappa in range(13):
            assert spec.weight(-kappa) == pytest.approx(spec.weight(kappa), abs=1e-15)

    @pytest.mark.parametrize("alpha", [0.5, 2.0, math.pi, 10.0, 4 * math.pi])
    def test_total_power_approaches_one(self, alpha):
        max_order = math.ceil(3 * alpha + 40)
        spec = modulation_spectrum(alpha, max_order)
        total = spec.power.sum()
        assert total <= 1.0 + 1e-12
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_truncated_power_below_one(self):
        spec = modulation_spectrum(3.0, 2)
        assert spec.power.sum() < 1.0

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            modulation_spectrum(1.0, -1)


class TestResonanceFrequencies:
    def test_first_order(self):
        assert Fraction(1, 2) in resonance_frequencies(1, 1)

    def test_examples(self):
        ratios = resonance_frequencies(1, 2)
        assert ratios == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(3, 2)]

    def test_sorted_deduplicated_and_bounded(self):
        ratios = resonance_frequencies(6, 5)
        assert ratios == sorted(set(ratios))
        assert all(0 < r <= 7 for r in ratios)

    def test_all_alias_to_odd_over_even(self):
        m_max = 5
        for ratio in resonance_frequencies(6, m_max):
            folded = aliased_ratio(ratio)
            assert folded.numerator % 2 == 1
            assert folded.denominator % 2 == 0
            assert folded.denominator <= 2 * m_max

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            resonance_frequencies(0, 3)


class TestAliasedRatio:
    @pytest.mark.parametrize("ratio, expected", [
        (Fraction(3, 2), Fraction(1, 2)),
        (Fraction(1, 1), Fraction(0, 1)),
        (Fraction(3, 4), Fraction(1, 4)),
        (Fraction(7, 6), Fraction(1, 6)),
    ])
    def test_exact_folding(self, ratio, expected):
        folded = aliased_ratio(ratio)
        assert isinstance(folded, Fraction)
        assert folded == expected

    def test_float_folding(self):
        assert aliased_ratio(1.5) == pytest.approx(0.5)
        assert aliased_ratio(0.8) == pytest.approx(0.2)
        assert aliased_ratio(2.0) == pytest.approx(0.0)

    def test_range(self):
        for r in np.linspace(0, 7, 211):
            assert 0.0 <= aliased_ratio(float(r)) <= 0.5

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            aliased_ratio(-0.1)


class TestResonanceEnergyProfile:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_zero_amplitude(self, m):
        assert resonance_energy_profile(0.0, m) == pytest.approx(0.0, abs=1e-15)

    def test_first_order_closed_form(self):
        for alpha in np.linspace(0, 2 * math.pi, 200):
            expected = math.sin(alpha) ** 2 / 4
            assert resonance_energy_profile(float(alpha), 1) == pytest.approx(
                expected, abs=1e-10)

    def test_first_order_peak_at_half_pi(self):
        grid = np.linspace(0, math.pi, 601)
        values = [resonance_energy_profile(float(a), 1) for a in grid]
        assert grid[int(np.argmax(values))] == pytest.approx(math.pi / 2, abs=0.01)

    @pytest.mark.parametrize("m", [1, 2, 4])
    @pytest.mark.parametrize("alpha", [0.4, 1.3, 2.9])
    def test_even_in_amplitude(self, m, alpha):
        assert resonance_energy_profile(-alpha, m) == pytest.approx(
            resonance_energy_profile(alpha, m), rel=1e-12)

    def test_explicit_term_count_matches_default(self):
        value = resonance_energy_profile(2.0, 2, n_terms=60)
        assert value == pytest.approx(resonance_energy_profile(2.0, 2), rel=1e-12)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            resonance_energy_profile(1.0, 0)


class TestAliasHistogram:
    def test_half_ratio_populates_only_endpoints(self):
        counts, _ = alias_histogram(0.5, 1000, 50)
        assert counts[0] > 0 and counts[-1] > 0
        assert counts[1:-1].sum() == 0

    def test_quarter_ratio_populates_three_bins(self):
        counts, _ = alias_histogram(0.25, 10_000, 50)
        assert int((counts > 0).sum()) == 3
        assert counts[0] > 0 and counts[25] > 0 and counts[-1] > 0

    def test_incommensurate_ratio_is_nearly_uniform(self):
        counts, _ = alias_histogram(math.sqrt(3) / 4, 10_000, 50)
        assert counts.min() > 0
        assert counts.max() / counts.min() < 1.5

    def test_counts_conserved(self):
        counts, edges = alias_histogram(math.sqrt(2) / 5, 5000, 25)
        assert counts.sum() == 5000
        assert edges[0] == 0.0 and edges[-1] == pytest.approx(0.5)

    def test_rejects_fewer_harmonics_than_bins(self):
        with pytest.raises(ValueError):
            alias_histogram(0.3, 10, 50)
