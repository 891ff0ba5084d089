import math

import numpy as np
import pytest

from kickedrotor.model import KickParams, phase_sequence
from kickedrotor.quantum import (
    GaussianEnsemble,
    GridAdequacyError,
    LadderState,
    PlaneWave,
    apply_free,
    apply_kick,
    evolve,
    init_state,
    momentum_distribution,
)

from oracles import bessel_j_array, dense_evolve

SQRT3_4 = math.sqrt(3) / 4


def rest_state(n_max=64, beta=0.0):
    (_, state), = init_state(PlaneWave(beta), n_max)
    return state


class TestInitState:
    def test_plane_wave(self):
        members = init_state(PlaneWave(0.0), 16)
        assert len(members) == 1
        weight, state = members[0]
        assert weight == 1.0
        assert state.amplitudes[16] == 1.0
        assert state.norm() == pytest.approx(1.0)

    def test_fwhm_conversion(self):
        # momentum FWHM of 0.4 single recoils -> sigma 0.1699 recoils
        ic = GaussianEnsemble.from_fwhm(0.4, members=8)
        assert ic.sigma_pr == pytest.approx(0.4 / (2 * math.sqrt(2 * math.log(2))), rel=1e-12)
        betas = np.array([s.beta for _, s in init_state(ic, 16)])
        # internally halved into two-recoil units
        assert np.abs(betas).max() < 0.5
        assert betas.std() == pytest.approx(ic.sigma_pr / 2, rel=0.3)

    def test_stratified_sampling_is_deterministic_and_symmetric(self):
        ic = GaussianEnsemble(sigma_pr=0.05, members=32)
        betas1 = np.array([s.beta for _, s in init_state(ic, 16)])
        betas2 = np.array([s.beta for _, s in init_state(ic, 16)])
        np.testing.assert_array_equal(betas1, betas2)
        np.testing.assert_allclose(betas1, -betas1[::-1], atol=1e-15)

    def test_random_sampling_reproducible_per_seed(self):
        ic = GaussianEnsemble(sigma_pr=0.05, members=16, seed=3)
        betas1 = np.array([s.beta for _, s in init_state(ic, 16)])
        betas2 = np.array([s.beta for _, s in init_state(ic, 16)])
        np.testing.assert_array_equal(betas1, betas2)
        other = GaussianEnsemble(sigma_pr=0.05, members=16, seed=4)
        assert not np.array_equal(
            betas1, np.array([s.beta for _, s in init_state(other, 16)]))

    def test_uniform_weights(self):
        members = init_state(GaussianEnsemble(sigma_pr=0.1, members=10), 16)
        assert all(w == pytest.approx(0.1) for w, _ in members)

    def test_rejects_wide_cloud(self):
        with pytest.raises(ValueError, match="outside"):
            init_state(GaussianEnsemble(sigma_pr=0.7, members=8), 16)

    def test_rejects_small_grid(self):
        with pytest.raises(ValueError):
            init_state(PlaneWave(0.0), 4)


class TestApplyKick:
    def test_zero_strength_is_identity(self):
        state = rest_state()
        new = apply_kick(state, 0.0, 0.7)
        np.testing.assert_allclose(new.amplitudes, state.amplitudes, atol=1e-14)

    @pytest.mark.parametrize("k", [0.5, 2.0, 3.0])
    def test_single_kick_diffraction_orders(self, k):
        state = apply_kick(rest_state(), k)
        expected = bessel_j_array(state.orders, k) ** 2
        np.testing.assert_allclose(state.populations(), expected, atol=1e-12)

    def test_norm_preserved(self):
        state = rest_state()
        for _ in range(10):
            state = apply_kick(state, 1.3, 0.4)
            state = apply_free(state, 2.7)
        assert state.norm() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("phase", [0.0, 0.9, math.pi / 2, 4.0])
    def test_populations_independent_of_phase_from_rest(self, phase):
        base = apply_kick(rest_state(), 2.0, 0.0).populations()
        shifted = apply_kick(rest_state(), 2.0, phase).populations()
        np.testing.assert_allclose(shifted, base, atol=1e-12)

    def test_grid_guard_raises(self):
        state = rest_state(n_max=8)
        with pytest.raises(GridAdequacyError):
            for _ in range(12):
                state = apply_kick(state, 3.0, 0.0)
                state = apply_free(state, 4 * math.pi)


class TestApplyFree:
    def test_resonant_period_is_identity_up_to_global_phase(self):
        state = apply_kick(rest_state(), 1.5)
        rotated = apply_free(state, 4 * math.pi)
        ratio = rotated.amplitudes[state.populations() > 1e-20] / \
            state.amplitudes[state.populations() > 1e-20]
        np.testing.assert_allclose(ratio, ratio[0], atol=1e-9)
        assert abs(abs(ratio[0]) - 1.0) < 1e-12

    def test_antiresonant_period_alternates_signs(self):
        state = apply_kick(rest_state(), 1.5)
        rotated = apply_free(state, 2 * math.pi)
        signs = (-1.0) ** np.abs(state.orders)
        np.testing.assert_allclose(rotated.amplitudes, signs * state.amplitudes,
                                   atol=1e-10)

    @pytest.mark.parametrize("period, beta", [(2 * math.pi, 0.0), (7.3, 0.21), (0.4, -0.4)])
    def test_populations_unchanged(self, period, beta):
        state = apply_kick(rest_state(beta=beta), 2.0)
        rotated = apply_free(state, period)
        np.testing.assert_allclose(rotated.populations(), state.populations(),
                                   atol=1e-14)
        assert rotated.beta == state.beta


class TestEvolve:
    def test_antiresonance_revival(self):
        p = KickParams(kick_strength=2.0, ell=1, epsilon=0.0, kicks=20)
        traj = evolve(PlaneWave(0.0), p, n_max=128)
        assert traj.energies[0] == 0.0
        np.testing.assert_allclose(traj.energies[2::2], 0.0, atol=1e-8)
        np.testing.assert_allclose(traj.energies[1::2], 8.0, atol=1e-8)

    def test_resonant_ballistic_growth(self):
        p = KickParams(kick_strength=1.2, ell=2, epsilon=0.0, kicks=12)
        traj = evolve(PlaneWave(0.0), p, n_max=256)
        kicks = np.arange(13)
        np.testing.assert_allclose(traj.energies, 2 * 1.2**2 * kicks**2, rtol=1e-10)

    def test_transformed_antiresonance_grows_quadratically(self):
        p = KickParams(kick_strength=2.0, ell=1, epsilon=0.0, alpha=math.pi / 2,
                       ratio=0.5, kicks=20)
        traj = evolve(PlaneWave(0.0), p, n_max=256)
        kicks = np.arange(2, 21)
        np.testing.assert_allclose(traj.energies[2:], 8.0 * kicks**2, rtol=1e-9)

    def test_matches_stepwise_composition(self):
        p = KickParams(kick_strength=1.1, ell=2, epsilon=0.37, alpha=0.8,
                       ratio=SQRT3_4, phi0=0.2, kicks=5)
        traj = evolve(PlaneWave(0.17), p, n_max=64)
        (_, state), = init_state(PlaneWave(0.17), 64)
        for phi in phase_sequence(p):
            state = apply_kick(state, p.kick_strength, float(phi))
            state = apply_free(state, p.scaled_period)
        assert traj.energies[-1] == pytest.approx(state.energy(), rel=1e-12)
        final = traj.final_distribution
        np.testing.assert_allclose(np.sort(final.probs)[::-1],
                                   np.sort(state.populations())[::-1], atol=1e-12)

    def test_matches_dense_matrix_oracle(self):
        p = KickParams(kick_strength=0.8, ell=0, epsilon=1.3, alpha=math.pi / 3,
                       ratio=SQRT3_4, phi0=0.0, kicks=5)
        (_, state), = init_state(PlaneWave(0.11), 16)
        for phi in phase_sequence(p):
            state = apply_kick(state, p.kick_strength, float(phi))
            state = apply_free(state, p.scaled_period)
        reference = dense_evolve(16, 0.11, p.scaled_period, p.kick_strength,
                                 phase_sequence(p))
        fidelity = abs(np.vdot(reference, state.amplitudes)) ** 2
        assert fidelity > 1 - 1e-8

    def test_initial_phase_reflection_symmetry(self):
        # at ratio 1/2 the kick phases are identical under phi0 -> 2*pi - phi0
        base = KickParams(kick_strength=2.0, ell=1, epsilon=0.0, alpha=math.pi / 2,
                          ratio=0.5, phi0=0.8, kicks=10)
        mirrored = base.with_(phi0=2 * math.pi - 0.8)
        e1 = evolve(PlaneWave(0.0), base, n_max=256).energies
        e2 = evolve(PlaneWave(0.0), mirrored, n_max=256).energies
        np.testing.assert_allclose(e1, e2, rtol=1e-9, atol=1e-12)

    def test_unitarity_over_long_runs(self):
        state = rest_state(n_max=256)
        for _ in range(1000):
            state = apply_kick(state, 5.0, 0.3)
            state = apply_free(state, 2.5)
        assert abs(state.norm() - 1.0) < 1e-10

    def test_ensemble_energy_is_weighted_average(self):
        ic = GaussianEnsemble(sigma_pr=0.05, members=4)
        p = KickParams(kick_strength=1.0, ell=1, epsilon=0.0, kicks=3)
        traj = evolve(ic, p, n_max=64)
        total = 0.0
        for weight, member in init_state(ic, 64):
            single = evolve(PlaneWave(member.beta), p, n_max=64)
            total += weight * single.energies[-1]
        assert traj.energies[-1] == pytest.approx(total, rel=1e-12)

    def test_snapshot_matches_shorter_run(self):
        p = KickParams(kick_strength=1.5, ell=2, epsilon=0.3, alpha=0.5,
                       ratio=SQRT3_4, kicks=8)
        long = evolve(PlaneWave(0.0), p, n_max=128, snapshot_kicks=(5,))
        short = evolve(PlaneWave(0.0), p.with_(kicks=5), n_max=128)
        np.testing.assert_allclose(long.snapshots[5].probs,
                                   short.final_distribution.probs, atol=1e-14)

    def test_trajectory_lengths_and_ranges(self):
        p = KickParams(kick_strength=1.0, ell=1, epsilon=0.2, kicks=9)
        traj = evolve(GaussianEnsemble(sigma_pr=0.1, members=6), p, n_max=64)
        assert traj.energies.shape == (10,)
        assert traj.p0_fractions.shape == (10,)
        assert (traj.energies >= 0).all()
        assert ((traj.p0_fractions >= 0) & (traj.p0_fractions <= 1)).all()


class TestMomentumDistribution:
    def test_no_kicks_is_delta_at_beta(self):
        p = KickParams(kick_strength=0.0, ell=1, kicks=1)
        traj = evolve(PlaneWave(0.25), p, n_max=32)
        hist = momentum_distribution(traj, beta_resolution=4)
        assert hist.probs.sum() == pytest.approx(1.0, abs=1e-10)
        assert hist.momenta[np.argmax(hist.probs)] == pytest.approx(0.25)

    def test_single_kick_diffraction_histogram(self):
        p = KickParams(kick_strength=2.0, ell=1, kicks=1)
        traj = evolve(PlaneWave(0.0), p, n_max=64)
        hist = momentum_distribution(traj, beta_resolution=1)
        orders = hist.momenta.astype(int)
        expected = bessel_j_array(orders, 2.0) ** 2
        np.testing.assert_allclose(hist.probs, expected, atol=1e-10)

    def test_normalized(self):
        p = KickParams(kick_strength=2.0, ell=2, epsilon=0.4, alpha=0.3,
                       ratio=SQRT3_4, kicks=10)
        traj = evolve(GaussianEnsemble(sigma_pr=0.17, members=8), p, n_max=128)
        hist = momentum_distribution(traj, beta_resolution=2)
        assert hist.probs.sum() == pytest.approx(1.0, abs=1e-10)
