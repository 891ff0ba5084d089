import math

import pytest

from kickedrotor.config import ConfigError, ExperimentConfig, evaluate_expression
from kickedrotor.presets import PRESETS, build_preset


class TestExpressionGrammar:
    @pytest.mark.parametrize("text, expected", [
        ("2", 2.0),
        ("0.65", 0.65),
        ("1e-3", 1e-3),
        ("pi", math.pi),
        ("pi/6", math.pi / 6),
        ("2*pi/3", 2 * math.pi / 3),
        ("sqrt(3)/4", math.sqrt(3) / 4),
        ("sqrt(5)/3", math.sqrt(5) / 3),
        ("1/pi", 1 / math.pi),
        ("-pi", -math.pi),
        ("(1+2)*4", 12.0),
        ("1/2 + 1/4", 0.75),
        ("sqrt(2+2)", 2.0),
    ])
    def test_valid(self, text, expected):
        assert evaluate_expression(text) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("text", [
        "", "foo", "sqrt 3", "1+", "2**3", "1/0", "sqrt(-1)", "(1", "pi pi",
    ])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            evaluate_expression(text)


class TestSerialization:
    def test_roundtrip_all_presets(self):
        for name in PRESETS:
            for config in build_preset(name):
                assert ExperimentConfig.from_text(config.to_text()) == config

    def test_roundtrip_custom(self):
        config = ExperimentConfig(
            kick_strength=0.65, ell=2, epsilon=0.0, alpha=math.pi / 12,
            ratio=math.sqrt(3) / 4, kicks=30, initial_kind="gaussian",
            sigma_pr=0.17, members=48, sampling="random", ensemble_seed=9,
            n_max=512, sweep_axis="epsilon",
            sweep_values=(-0.5, 0.0, 0.5), seed=3, label="robust",
            power_window=(10, 30), snapshot_kicks=(15, 30), write_series=True,
        )
        assert ExperimentConfig.from_text(config.to_text()) == config

    def test_parse_exact_ratio(self):
        text = "\n".join([
            "kick.strength = 0.65",
            "kick.ell = 2",
            "kick.ratio = sqrt(3)/4",
            "kick.kicks = 15",
        ])
        config = ExperimentConfig.from_text(text)
        assert config.ratio == math.sqrt(3) / 4

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\nkick.strength = 1  # trailing\nkick.ell = 1\n"
        config = ExperimentConfig.from_text(text)
        assert config.kick_strength == 1.0

    def test_sweep_range_expansion(self):
        text = ("kick.strength = 1\nkick.ell = 1\nsweep.axis = alpha\n"
                "sweep.start = 0\nsweep.stop = pi\nsweep.count = 5\n")
        config = ExperimentConfig.from_text(text)
        assert len(config.sweep_values) == 5
        assert config.sweep_values[0] == 0.0
        assert config.sweep_values[-1] == pytest.approx(math.pi)

    def test_sweep_range_conflicts_with_values(self):
        text = ("kick.strength = 1\nkick.ell = 1\nsweep.axis = alpha\n"
                "sweep.values = 0, 1\nsweep.start = 0\nsweep.stop = 1\nsweep.count = 2\n")
        with pytest.raises(ConfigError, match="sweep.values"):
            ExperimentConfig.from_text(text)

    def test_sweep_step_expansion(self):
        text = ("kick.strength = 1\nkick.ell = 1\nsweep.axis = epsilon\n"
                "sweep.start = -0.5\nsweep.stop = 0.5\nsweep.step = 0.25\n")
        config = ExperimentConfig.from_text(text)
        assert config.sweep_values == pytest.approx((-0.5, -0.25, 0.0, 0.25, 0.5))

    def test_sweep_step_conflicts_with_count(self):
        text = ("kick.strength = 1\nkick.ell = 1\nsweep.axis = alpha\n"
                "sweep.start = 0\nsweep.stop = 1\nsweep.step = 0.5\nsweep.count = 3\n")
        with pytest.raises(ConfigError, match="sweep.step"):
            ExperimentConfig.from_text(text)

    def test_output_dir_roundtrip(self):
        config = ExperimentConfig(kick_strength=1.0, ell=1, out_dir="results/run1")
        again = ExperimentConfig.from_text(config.to_text())
        assert again.out_dir == "results/run1"


class TestValidation:
    def test_missing_required_field(self):
        with pytest.raises(ConfigError, match="kick.strength"):
            ExperimentConfig.from_text("kick.ell = 1\n")

    def test_unknown_field_reports_path(self):
        with pytest.raises(ConfigError, match="kick.stregnth"):
            ExperimentConfig.from_text("kick.strength = 1\nkick.ell = 1\nkick.stregnth = 2\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            ExperimentConfig.from_text("kick.strength = 1\nkick.strength = 2\nkick.ell = 1\n")

    def test_bad_axis(self):
        with pytest.raises(ConfigError, match="sweep.axis"):
            ExperimentConfig(kick_strength=1.0, ell=1, sweep_axis="beta",
                             sweep_values=(1.0,))

    def test_sweep_without_values(self):
        with pytest.raises(ConfigError, match="sweep.values"):
            ExperimentConfig(kick_strength=1.0, ell=1, sweep_axis="alpha")

    def test_values_without_axis(self):
        with pytest.raises(ConfigError, match="sweep.values"):
            ExperimentConfig(kick_strength=1.0, ell=1, sweep_values=(1.0,))

    @pytest.mark.parametrize("kwargs, field", [
        (dict(alpha=-1.0), "kick.alpha"),
        (dict(epsilon=3.5), "kick.epsilon"),
        (dict(kicks=0), "kick.kicks"),
        (dict(initial_kind="thermal"), "initial.kind"),
        (dict(sigma_pr=-0.1), "initial.sigma_pr"),
        (dict(members=0), "initial.members"),
        (dict(sampling="sobol"), "initial.sampling"),
        (dict(n_max=2), "grid.n_max"),
        (dict(power_window=(0, 10)), "observables.power_window"),
        (dict(snapshot_kicks=(0,)), "output.snapshots"),
    ])
    def test_field_errors_carry_paths(self, kwargs, field):
        with pytest.raises(ConfigError) as err:
            ExperimentConfig(kick_strength=1.0, ell=1, **kwargs)
        assert err.value.field == field

    def test_non_integer_where_integer_expected(self):
        with pytest.raises(ConfigError, match="kick.kicks"):
            ExperimentConfig.from_text("kick.strength = 1\nkick.ell = 1\nkick.kicks = 2.5\n")
