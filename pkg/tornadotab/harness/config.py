"""Experiment configuration loaded from JSON."""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import typing as tp
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from tornadotab.core.errors import ConfigError, ParameterError
from tornadotab.core.hashing import HashParams

from .keys import GENERATORS

KINDS = (
    "lower_tail",
    "upper_tail",
    "layers",
    "cond_translation",
    "independence",
    "sketch_accuracy",
    "coupling_count",
)

INNER_MODES = ("exact", "resample")
ENV_OVERRIDES = {"MASTER_SEED": "master_seed", "THREADS": "workers"}
EXECUTION_FIELDS = ("workers", "output")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    c: int = 4
    d: int = 4
    char_bits: int = 16
    range_bits: int = 64
    n: int = 1 << 15
    generator: str = "sequential"
    t: int = 0
    mask: int = 0
    deltas: tuple[float, ...] = (0.02, 0.05, 0.1)
    trials: int = 1000
    master_seed: int = 0
    workers: int = 1
    output: str | None = None
    layer: int = 1
    inner: str = "exact"
    inner_trials: int = 1000
    sketch_k: int = 256
    jaccard_k: int = 64
    jaccard_union: int = 300
    frequency_t: int = 3
    coupling_p: float = 0.01
    s_all: int = 160
    max_table_bytes: int = 1 << 30
    baseline: bool = True

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            _check_type(f.name, value, f.type)
        if self.kind not in KINDS:
            raise ConfigError(f"Unknown experiment kind {self.kind!r}; choose from {KINDS}.")
        if self.generator not in GENERATORS:
            raise ConfigError(f"Unknown key generator {self.generator!r}.")
        if self.inner not in INNER_MODES:
            raise ConfigError(f"inner must be one of {INNER_MODES}.")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}.")
        if self.n < 0:
            raise ConfigError(f"n must be non-negative, got {self.n}.")
        if not self.deltas:
            raise ConfigError("The delta grid must not be empty.")
        if any(not 0 <= delta <= 1 for delta in self.deltas):
            raise ConfigError("Every delta must lie in [0, 1].")
        if not 0 <= self.t <= self.range_bits or not 0 <= self.mask < 1 << self.t:
            raise ConfigError(f"Invalid selector t={self.t}, mask={self.mask}.")
        if not 0 < self.coupling_p < 1:
            raise ConfigError("coupling_p must lie in (0, 1).")
        if self.layer < 1 or self.inner_trials < 1 or self.workers < 0:
            raise ConfigError("layer and inner_trials must be positive, workers non-negative.")
        try:
            self.params
        except ParameterError as err:
            raise ConfigError(str(err)) from err

    @property
    def params(self) -> HashParams:
        return HashParams(self.c, self.d, self.char_bits, self.range_bits)

    @property
    def sigma_size(self) -> int:
        return 1 << self.char_bits

    @property
    def mu(self) -> Fraction:
        return Fraction(self.n, 1 << self.t)

    def to_dict(self) -> dict[str, tp.Any]:
        out = dataclasses.asdict(self)
        out["deltas"] = list(self.deltas)
        return out

    @property
    def sha256(self) -> str:
        """sha256 of the canonical JSON of the resolved configuration.

        The execution fields ``workers`` and ``output`` do not change results
        and are left out.
        """
        resolved = {
            k: v for k, v in self.to_dict().items() if k not in EXECUTION_FIELDS
        }
        return hashlib.sha256(canonical_json(resolved).encode()).hexdigest()


def canonical_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


_SCALARS = {"int": int, "float": (int, float), "str": str, "bool": bool}


def _check_type(name: str, value, annotation: str) -> None:
    annotation = str(annotation)
    if annotation == "str | None":
        ok = value is None or isinstance(value, str)
    elif annotation.startswith("tuple"):
        ok = isinstance(value, tuple) and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        )
    else:
        expected = _SCALARS[annotation]
        ok = isinstance(value, expected) and (
            annotation == "bool" or not isinstance(value, bool)
        )
    if not ok:
        raise ConfigError(f"Field {name!r} must be {annotation}, got {value!r}.")


def config_from_dict(data: tp.Mapping[str, tp.Any]) -> ExperimentConfig:
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration fields: {', '.join(unknown)}.")
    if "kind" not in data:
        raise ConfigError("The configuration needs an experiment 'kind'.")
    values = dict(data)
    if isinstance(values.get("deltas"), list):
        values["deltas"] = tuple(values["deltas"])
    return ExperimentConfig(**values)


def apply_env(
    config: ExperimentConfig, environ: tp.Mapping[str, str] | None = None
) -> ExperimentConfig:
    """Apply the ``MASTER_SEED`` and ``THREADS`` environment overrides."""
    environ = os.environ if environ is None else environ
    changes = {}
    for var, name in ENV_OVERRIDES.items():
        if var in environ:
            try:
                changes[name] = int(environ[var])
            except ValueError as err:
                raise ConfigError(f"{var} must be an integer, got {environ[var]!r}.") from err
    return dataclasses.replace(config, **changes) if changes else config


def load_config(
    path: "str | Path", environ: tp.Mapping[str, str] | None = None
) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"Cannot read configuration {path}: {err}") from err
    if not isinstance(data, dict):
        raise ConfigError("The configuration must be a JSON object.")
    return apply_env(config_from_dict(data), environ)
