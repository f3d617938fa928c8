import logging
import typing as tp
from dataclasses import dataclass

if tp.TYPE_CHECKING:
    from tornadotab.backend.base import ArrayBackend
    from tornadotab.core.typing import Array

logger = logging.getLogger(__name__)


def _plain(x):
    if hasattr(x, "tolist"):
        return x.tolist()
    if isinstance(x, (bool, int)):
        return x
    return float(x)


@dataclass(frozen=True)
class BoundResult:
    """A bound evaluation.

    ``value`` is ``raw`` clamped to ``[0, 1]`` for probabilities and equal to
    ``raw`` otherwise. ``exp_term`` and ``additive_term`` split ``raw`` into its
    exponential and additive parts where the formula has them.
    """

    value: "Array"
    raw: "Array"
    exp_term: "Array"
    additive_term: "Array"
    vacuous: "Array"
    warnings: tuple[str, ...] = ()

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return {
            "value": _plain(self.value),
            "raw": _plain(self.raw),
            "exp_term": _plain(self.exp_term),
            "additive_term": _plain(self.additive_term),
            "vacuous": _plain(self.vacuous),
            "warnings": list(self.warnings),
        }


def flag(name: str, warnings: list[str], condition: bool, message: str) -> None:
    """Record a soft precondition violation."""
    if condition:
        logger.warning("%s: %s", name, message)
        warnings.append(message)


def probability(
    B: "ArrayBackend",
    exp_term: "Array",
    additive_term: "Array",
    warnings: list[str],
) -> BoundResult:
    raw = exp_term + additive_term
    value = B.minimum(B.maximum(raw, B.asarray(0)), B.asarray(1))
    return BoundResult(value, raw, exp_term, additive_term, raw > 1, tuple(warnings))


def real(B: "ArrayBackend", raw: "Array", warnings: list[str]) -> BoundResult:
    zero = B.asarray(0)
    return BoundResult(raw, raw, raw, zero, False, tuple(warnings))
