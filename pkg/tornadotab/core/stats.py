import math
import typing as tp

import numpy as np
from scipy.stats import binomtest

if tp.TYPE_CHECKING:
    from numpy.typing import ArrayLike

CONFIDENCE = 0.99


def wilson_interval(
    successes: int, trials: int, confidence: float = CONFIDENCE
) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("The Wilson interval needs at least one trial.")
    ci = binomtest(int(successes), int(trials)).proportion_ci(
        confidence_level=confidence, method="wilson"
    )
    return max(0.0, float(ci.low)), min(1.0, float(ci.high))


def wilson_half_width(
    successes: int, trials: int, confidence: float = CONFIDENCE
) -> float:
    low, high = wilson_interval(successes, trials, confidence)
    return (high - low) / 2


def mean_and_sem(values: "ArrayLike") -> tuple[float, float, float]:
    """Sample mean, sample standard deviation and standard error of the mean."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise ValueError("Cannot summarise an empty sample.")
    mean = float(np.mean(x))
    std = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    return mean, std, std / math.sqrt(x.size)
