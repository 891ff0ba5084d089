"""Experiment configuration: flat key-value files with an exact-value grammar.

Config files are plain text, one ``section.key = value`` per line, ``#``
comments allowed.  Numeric values accept a tiny expression grammar (integers,
decimals, ``pi``, ``sqrt(...)``, ``+ - * /``, parentheses) so incommensurate
frequency ratios like ``sqrt(3)/4`` can be written exactly instead of as
truncated decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

__all__ = ["ConfigError", "evaluate_expression", "ExperimentConfig", "SWEEP_AXES"]

SWEEP_AXES = ("none", "alpha", "ratio", "epsilon", "phi0", "kicks")

_FLOAT_FORMAT = "%.17g"


class ConfigError(ValueError):
    """Invalid configuration; ``field`` carries the dotted field path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# --- expression grammar ---------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_name(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def take_number(self) -> float:
        start = self.pos
        seen_e = False
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c.isdigit() or c == ".":
                self.pos += 1
            elif c in "eE" and not seen_e:
                seen_e = True
                self.pos += 1
                if self.pos < len(self.text) and self.text[self.pos] in "+-":
                    self.pos += 1
            else:
                break
        try:
            return float(self.text[start:self.pos])
        except ValueError:
            raise ValueError(f"bad number at {start}: {self.text[start:self.pos]!r}") from None


def _parse_sum(tok: _Tokens) -> float:
    value = _parse_product(tok)
    while tok.peek() in ("+", "-"):
        op = tok.peek()
        tok.pos += 1
        rhs = _parse_product(tok)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_product(tok: _Tokens) -> float:
    value = _parse_atom(tok)
    while tok.peek() in ("*", "/"):
        op = tok.peek()
        tok.pos += 1
        rhs = _parse_atom(tok)
        if op == "/":
            if rhs == 0.0:
                raise ValueError("division by zero")
            value = value / rhs
        else:
            value = value * rhs
    return value


def _parse_atom(tok: _Tokens) -> float:
    c = tok.peek()
    if c == "-":
        tok.pos += 1
        return -_parse_atom(tok)
    if c == "+":
        tok.pos += 1
        return _parse_atom(tok)
    if c == "(":
        tok.pos += 1
        value = _parse_sum(tok)
        if tok.peek() != ")":
            raise ValueError("missing closing parenthesis")
        tok.pos += 1
        return value
    if c.isdigit() or c == ".":
        return tok.take_number()
    if c.isalpha():
        name = tok.take_name()
        if name == "pi":
            return math.pi
        if name == "sqrt":
            if tok.peek() != "(":
                raise ValueError("sqrt requires parentheses")
            tok.pos += 1
            arg = _parse_sum(tok)
            if tok.peek() != ")":
                raise ValueError("missing closing parenthesis after sqrt")
            tok.pos += 1
            if arg < 0:
                raise ValueError(f"sqrt of negative value {arg!r}")
            return math.sqrt(arg)
        raise ValueError(f"unknown name {name!r}")
    raise ValueError(f"unexpected character {c!r}" if c else "unexpected end of expression")


def evaluate_expression(text: str) -> float:
    """Evaluate a numeric config expression (integers, decimals, pi, sqrt, + - * /)."""
    tok = _Tokens(text)
    value = _parse_sum(tok)
    if tok.peek():
        raise ValueError(f"trailing input {tok.text[tok.pos:]!r}")
    return value


# --- configuration --------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation run, or a one-axis sweep of runs, plus its outputs.

    All kick parameters mirror :class:`kickedrotor.model.KickParams`; the
    sweep axis replaces the corresponding field point by point.  Observable
    windows are inclusive kick-index pairs and are clamped against the actual
    kick count at run time.
    """

    kick_strength: float = 1.0
    ell: int = 1
    epsilon: float = 0.0
    alpha: float = 0.0
    ratio: float = 0.0
    phi0: float = 0.0
    kicks: int = 1
    initial_kind: str = "plane_wave"      # plane_wave | gaussian
    initial_beta: float = 0.0
    sigma_pr: float = 0.05
    members: int = 64
    sampling: str = "stratified"          # stratified | random
    ensemble_seed: int = 0
    n_max: int = 2048
    sweep_axis: str = "none"
    sweep_values: tuple[float, ...] = ()
    seed: int = 0
    label: str = "run"
    out_dir: str = ""
    power_window: tuple[int, int] | None = None
    diffusion_window: tuple[int, int] | None = None
    localization_kick: int | None = None
    profile_order: int | None = None
    write_series: bool = False
    snapshot_kicks: tuple[int, ...] = ()
    effective_kick_column: bool = False

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if abs(self.epsilon) >= math.pi:
            raise ConfigError("kick.epsilon", f"|epsilon| must be < pi, got {self.epsilon!r}")
        if self.alpha < 0:
            raise ConfigError("kick.alpha", f"must be >= 0, got {self.alpha!r}")
        if self.ratio < 0:
            raise ConfigError("kick.ratio", f"must be >= 0, got {self.ratio!r}")
        if self.kicks < 1:
            raise ConfigError("kick.kicks", f"must be >= 1, got {self.kicks!r}")
        if self.initial_kind not in ("plane_wave", "gaussian"):
            raise ConfigError("initial.kind", f"must be plane_wave or gaussian, got {self.initial_kind!r}")
        if not (-0.5 <= self.initial_beta < 0.5):
            raise ConfigError("initial.beta", f"must lie in [-1/2, 1/2), got {self.initial_beta!r}")
        if self.sigma_pr <= 0:
            raise ConfigError("initial.sigma_pr", f"must be > 0, got {self.sigma_pr!r}")
        if self.members < 1:
            raise ConfigError("initial.members", f"must be >= 1, got {self.members!r}")
        if self.sampling not in ("stratified", "random"):
            raise ConfigError("initial.sampling", f"must be stratified or random, got {self.sampling!r}")
        if self.n_max < 8:
            raise ConfigError("grid.n_max", f"must be >= 8, got {self.n_max!r}")
        if self.sweep_axis not in SWEEP_AXES:
            raise ConfigError("sweep.axis", f"must be one of {SWEEP_AXES}, got {self.sweep_axis!r}")
        if self.sweep_axis == "none" and self.sweep_values:
            raise ConfigError("sweep.values", "sweep values given but sweep.axis is none")
        if self.sweep_axis != "none" and not self.sweep_values:
            raise ConfigError("sweep.values", f"sweep over {self.sweep_axis} needs at least one value")
        for name in ("power_window", "diffusion_window"):
            window = getattr(self, name)
            if window is not None and (window[0] < 1 or window[1] < window[0]):
                raise ConfigError(f"observables.{name}", f"bad window {window!r}")
        if self.localization_kick is not None and self.localization_kick < 1:
            raise ConfigError("observables.localization_kick", "must be >= 1")
        if self.profile_order is not None and self.profile_order < 1:
            raise ConfigError("output.profile_order", "must be >= 1")
        if any(t < 1 for t in self.snapshot_kicks):
            raise ConfigError("output.snapshots", "snapshot kicks must be >= 1")

    def with_(self, **kwargs) -> "ExperimentConfig":
        return replace(self, **kwargs)

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        def fmt(value) -> str:
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return _FLOAT_FORMAT % value
            if isinstance(value, int):
                return str(value)
            return str(value)

        lines = [
            f"kick.strength = {fmt(self.kick_strength)}",
            f"kick.ell = {self.ell}",
            f"kick.epsilon = {fmt(self.epsilon)}",
            f"kick.alpha = {fmt(self.alpha)}",
            f"kick.ratio = {fmt(self.ratio)}",
            f"kick.phi0 = {fmt(self.phi0)}",
            f"kick.kicks = {self.kicks}",
            f"initial.kind = {self.initial_kind}",
            f"initial.beta = {fmt(self.initial_beta)}",
            f"initial.sigma_pr = {fmt(self.sigma_pr)}",
            f"initial.members = {self.members}",
            f"initial.sampling = {self.sampling}",
            f"initial.seed = {self.ensemble_seed}",
            f"grid.n_max = {self.n_max}",
            f"sweep.axis = {self.sweep_axis}",
        ]
        if self.sweep_values:
            lines.append("sweep.values = " + ", ".join(fmt(v) for v in self.sweep_values))
        lines += [
            f"run.seed = {self.seed}",
            f"run.label = {self.label}",
        ]
        if self.out_dir:
            lines.append(f"output.dir = {self.out_dir}")
        if self.power_window is not None:
            lines.append(f"observables.power_window = {self.power_window[0]}, {self.power_window[1]}")
        if self.diffusion_window is not None:
            lines.append(f"observables.diffusion_window = {self.diffusion_window[0]}, {self.diffusion_window[1]}")
        if self.localization_kick is not None:
            lines.append(f"observables.localization_kick = {self.localization_kick}")
        if self.profile_order is not None:
            lines.append(f"output.profile_order = {self.profile_order}")
        lines.append(f"output.series = {fmt(self.write_series)}")
        if self.snapshot_kicks:
            lines.append("output.snapshots = " + ", ".join(str(t) for t in self.snapshot_kicks))
        lines.append(f"output.effective_kick = {fmt(self.effective_kick_column)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        pairs: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in pairs:
                raise ConfigError(key, "duplicate key")
            pairs[key] = value
        return cls._from_pairs(pairs)

    @classmethod
    def _from_pairs(cls, pairs: dict[str, str]) -> "ExperimentConfig":
        def take_expr(key: str, default: float | None = None) -> float:
            if key not in pairs:
                if default is None:
                    raise ConfigError(key, "missing required field")
                return default
            try:
                return evaluate_expression(pairs.pop(key))
            except ValueError as exc:
                raise ConfigError(key, str(exc)) from None

        def take_int(key: str, default: int | None = None) -> int:
            value = take_expr(key, default=None if default is None else float(default))
            if value != int(value):
                raise ConfigError(key, f"expected an integer, got {value!r}")
            return int(value)

        def take_str(key: str, default: str) -> str:
            return pairs.pop(key, default)

        def take_bool(key: str, default: bool) -> bool:
            if key not in pairs:
                return default
            raw = pairs.pop(key).lower()
            if raw in ("true", "yes", "1"):
                return True
            if raw in ("false", "no", "0"):
                return False
            raise ConfigError(key, f"expected true/false, got {raw!r}")

        def take_list(key: str) -> tuple[float, ...]:
            if key not in pairs:
                return ()
            raw = pairs.pop(key)
            try:
                return tuple(evaluate_expression(part) for part in raw.split(",") if part.strip())
            except ValueError as exc:
                raise ConfigError(key, str(exc)) from None

        def take_window(key: str) -> tuple[int, int] | None:
            values = take_list(key)
            if not values:
                return None
            if len(values) != 2 or any(v != int(v) for v in values):
                raise ConfigError(key, f"expected two integers, got {values!r}")
            return int(values[0]), int(values[1])

        sweep_values = take_list("sweep.values")
        range_keys = ("sweep.start", "sweep.stop", "sweep.count", "sweep.step")
        if any(key in pairs for key in range_keys):
            if sweep_values:
                raise ConfigError("sweep.values",
                                  "give either sweep.values or a sweep.start/stop range")
            start = take_expr("sweep.start")
            stop = take_expr("sweep.stop")
            if "sweep.step" in pairs:
                if "sweep.count" in pairs:
                    raise ConfigError("sweep.step", "give either sweep.step or sweep.count")
                step = take_expr("sweep.step")
                if step <= 0:
                    raise ConfigError("sweep.step", "must be > 0")
                count = int(math.floor((stop - start) / step + 1e-9)) + 1
            else:
                count = take_int("sweep.count")
                if count < 1:
                    raise ConfigError("sweep.count", "must be >= 1")
                step = (stop - start) / (count - 1) if count > 1 else 0.0
            sweep_values = tuple(start + i * step for i in range(count))

        loc_kick = pairs.pop("observables.localization_kick", None)
        profile = pairs.pop("output.profile_order", None)

        config_kwargs = dict(
            kick_strength=take_expr("kick.strength"),
            ell=take_int("kick.ell"),
            epsilon=take_expr("kick.epsilon", 0.0),
            alpha=take_expr("kick.alpha", 0.0),
            ratio=take_expr("kick.ratio", 0.0),
            phi0=take_expr("kick.phi0", 0.0),
            kicks=take_int("kick.kicks", 1),
            initial_kind=take_str("initial.kind", "plane_wave"),
            initial_beta=take_expr("initial.beta", 0.0),
            sigma_pr=take_expr("initial.sigma_pr", 0.05),
            members=take_int("initial.members", 64),
            sampling=take_str("initial.sampling", "stratified"),
            ensemble_seed=take_int("initial.seed", 0),
            n_max=take_int("grid.n_max", 2048),
            sweep_axis=take_str("sweep.axis", "none"),
            sweep_values=sweep_values,
            seed=take_int("run.seed", 0),
            label=take_str("run.label", "run"),
            out_dir=take_str("output.dir", ""),
            power_window=take_window("observables.power_window"),
            diffusion_window=take_window("observables.diffusion_window"),
            localization_kick=None if loc_kick is None else int(loc_kick),
            profile_order=None if profile is None else int(profile),
            write_series=take_bool("output.series", False),
            snapshot_kicks=tuple(int(t) for t in take_list("output.snapshots")),
            effective_kick_column=take_bool("output.effective_kick", False),
        )
        if pairs:
            raise ConfigError(sorted(pairs)[0], "unknown field")
        return cls(**config_kwargs)
