"""Experiment reports and their CSV and JSON files."""
import csv
import io
import json
import logging
import math
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from tornadotab.core.selection import LayerProfile, write_layer_csv

if tp.TYPE_CHECKING:
    from .config import ExperimentConfig

logger = logging.getLogger(__name__)

THEOREM = "theorem"
OUT_OF_THEOREM = "out-of-theorem"


@dataclass(frozen=True)
class Check:
    """One acceptance assertion of an experiment."""

    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, tp.Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(eq=False)
class Report:
    """Rows, acceptance checks and metadata of one experiment run."""

    config: "ExperimentConfig"
    columns: tuple[str, ...]
    rows: list[dict[str, tp.Any]]
    regime: str = THEOREM
    checks: list[Check] = field(default_factory=list)
    summary: dict[str, tp.Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    profiles: list[LayerProfile] | None = None

    @property
    def kind(self) -> str:
        return self.config.kind

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        passed = bool(passed)
        self.checks.append(Check(name, passed, detail))
        if not passed:
            logger.warning("Check %s failed: %s", name, detail)

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            "kind": self.kind,
            "config": self.config.to_dict(),
            "config_sha256": self.config.sha256,
            "regime": self.regime,
            "passed": self.passed,
            "failed": self.failed,
            "checks": [check.to_dict() for check in self.checks],
            "summary": {k: _json_value(v) for k, v in self.summary.items()},
            "warnings": list(self.warnings),
            "columns": list(self.columns),
            "rows": [{k: _json_value(row.get(k)) for k in self.columns} for row in self.rows],
        }

    def to_csv(self) -> str:
        buffer = io.StringIO()
        buffer.write(f"# config_sha256={self.config.sha256}\n")
        writer = csv.DictWriter(buffer, fieldnames=self.columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: format_value(row.get(k)) for k in self.columns})
        return buffer.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def write(self, path: "str | Path") -> list[Path]:
        """Write ``path`` as CSV next to a ``.json`` mirror and return the files written.

        Layer reports also get the per-trial profiles in ``<stem>.profiles.csv``.
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        written = [path, path.with_suffix(".json")]
        path.write_text(self.to_csv())
        written[1].write_text(self.to_json())
        if self.profiles is not None:
            profiles_path = path.with_suffix(".profiles.csv")
            write_layer_csv(profiles_path, self.profiles)
            written.append(profiles_path)
        logger.info("Wrote %s", ", ".join(str(p) for p in written))
        return written


@dataclass(eq=False)
class TailReport(Report):
    """Per-delta empirical tail frequencies next to the bound curves.

    Every row has ``frequency`` inside ``[ci_low, ci_high]`` within ``[0, 1]``,
    and the same for the ``oracle_`` columns when the baseline was run.
    """

    def __post_init__(self):
        for row in self.rows:
            for prefix in ("", "oracle_"):
                freq = row.get(f"{prefix}frequency")
                if freq is None:
                    continue
                low, high = row[f"{prefix}ci_low"], row[f"{prefix}ci_high"]
                if not 0 <= low <= freq <= high <= 1:
                    raise ValueError(f"Inconsistent tail row {row}.")

    @property
    def deltas(self) -> list[float]:
        return [row["delta"] for row in self.rows]


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        value = float(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value
