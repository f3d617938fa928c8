import typing as tp

from tornadotab.backend import backends
from tornadotab.core.errors import DomainError

from ._result import BoundResult, flag, probability, real

if tp.TYPE_CHECKING:
    from tornadotab.backend.base import ArrayBackend
    from tornadotab.core.typing import Array, ArrayLike, Backend


def _pow2_half(B: "ArrayBackend", s: "Array") -> "Array":
    """``2**(-s/2)`` in the log domain."""
    return B.exp(-s / 2 * B.log(B.asarray(2)))


def _ratio_pow(B: "ArrayBackend", s: "Array", b: "Array") -> "Array":
    """``(3/s)**b`` in the log domain."""
    return B.exp(b * B.log(B.asarray(3) / s))


def _chernoff_upper(B: "ArrayBackend", delta: "Array", mu: "Array") -> "Array":
    """``(e^delta / (1+delta)^(1+delta))^mu`` evaluated as ``exp(mu(delta - (1+delta)log1p(delta)))``."""
    return B.exp(mu * (delta - (1 + delta) * B.log1p(delta)))


def _log_mu_bar(B: "ArrayBackend", i: "Array", f: "Array", s: "Array") -> "Array":
    return B.log(s) + i * B.log(f) - B.lgamma(i + 1)


def classic_chernoff(
    delta: "ArrayLike", mu: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Two-sided Chernoff bound ``2 exp(-mu delta^2 / 3)`` for fully random selection."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        delta, mu = map(B.asarray, (delta, mu))
        if B.any(delta < 0) or B.any(delta > 1):
            raise DomainError("The classic Chernoff bound needs delta in [0, 1].")
        return probability(B, 2 * B.exp(-mu * delta**2 / 3), B.asarray(0), [])


def upper_tail_tornado(
    delta: "ArrayLike", mu: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Upper tail ``(e^delta / (1+delta)^(1+delta))^mu`` of tornado selection."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        delta, mu = map(B.asarray, (delta, mu))
        if B.any(delta < 0):
            raise DomainError("The upper tail bound needs delta >= 0.")
        return probability(B, _chernoff_upper(B, delta, mu), B.asarray(0), [])


def generalized_chernoff(
    delta: "ArrayLike", mu: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Chernoff bound for sums of indicators whose joint probabilities are dominated
    by products of ``p_i`` with ``sum(p_i) = mu``."""
    return upper_tail_tornado(delta, mu, backend=backend)


def bernstein_tail(
    t: "ArrayLike",
    variance_sum: "ArrayLike",
    m: "ArrayLike",
    backend: "Backend" = None,
) -> BoundResult:
    """Bernstein tail ``exp(-t^2 / 2 / (variance_sum + t m / 3))``."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        t, variance_sum, m = map(B.asarray, (t, variance_sum, m))
        if B.any(t < 0) or B.any(variance_sum < 0) or B.any(m <= 0):
            raise DomainError("Bernstein needs t >= 0, variance_sum >= 0 and m > 0.")
        denom = variance_sum + t * m / 3
        safe = B.where(denom > 0, denom, B.asarray(1))
        exponent = B.where(t > 0, t**2 / 2 / safe, B.asarray(0))
        return probability(B, B.exp(-exponent), B.asarray(0), [])


def local_uniformity_error(
    sigma_size: "ArrayLike", b: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Probability ``24(3/s)^b + 2^(-s/2)`` that the selected free bits are not fully random."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        s, b = map(B.asarray, (sigma_size, b))
        if B.any(s < 2):
            raise DomainError("Local uniformity needs an alphabet of at least 2 characters.")
        return probability(B, B.asarray(0), 24 * _ratio_pow(B, s, b) + _pow2_half(B, s), [])


def upper_tail_local(
    delta: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    b: "ArrayLike",
    backend: "Backend" = None,
) -> BoundResult:
    """Upper tail ``exp(-mu delta^2 / 3)`` of a fully random selection plus the local uniformity error."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        delta, mu, s, b = map(B.asarray, (delta, mu, sigma_size, b))
        additive = 24 * _ratio_pow(B, s, b) + _pow2_half(B, s)
        return probability(B, B.exp(-mu * delta**2 / 3), additive, [])


def _tornado_conditions(name, B, warnings, s, b, c) -> None:
    flag(name, warnings, B.any(b < 1), "b >= 1 is required")
    flag(name, warnings, B.any(s < 2**16 * b**2), "s >= 2^16 b^2 does not hold")
    flag(name, warnings, B.any(c > B.log(s)), "c <= ln(s) does not hold")


def pretty1_bound(
    delta: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    b: "ArrayLike",
    c: "ArrayLike",
    backend: "Backend" = None,
) -> BoundResult:
    """Lower tail ``3 exp(-delta^2 mu / 7) + (c+b+1) ln(s) (49 (3/s)^b + 3 (1/2)^(s/2))``.

    Violated preconditions are reported as warnings and the formula is
    still evaluated.
    """
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        delta, mu, s, b, c = map(B.asarray, (delta, mu, sigma_size, b, c))
        warnings: list[str] = []
        _tornado_conditions("pretty1", B, warnings, s, b, c)
        flag(
            "pretty1",
            warnings,
            B.any(mu < s / 4) or B.any(mu > s / 2),
            "mu in [s/4, s/2] does not hold",
        )
        exp_term = 3 * B.exp(-(delta**2) * mu / 7)
        additive = (
            (c + b + 1)
            * B.log(s)
            * (49 * _ratio_pow(B, s, b) + 3 * _pow2_half(B, s))
        )
        return probability(B, exp_term, additive, warnings)


def subsampling_bound(
    delta: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    b: "ArrayLike",
    c: "ArrayLike",
    backend: "Backend" = None,
) -> BoundResult:
    """Threshold sampling bound ``5 exp(-delta^2 mu / 3) + (c+b+2) ln(s) (49 (3/s)^b + 3 (1/2)^(s/2))``."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        delta, mu, s, b, c = map(B.asarray, (delta, mu, sigma_size, b, c))
        warnings: list[str] = []
        _tornado_conditions("subsampling", B, warnings, s, b, c)
        flag("subsampling", warnings, B.any(mu > s / 278), "mu <= s/278 does not hold")
        flag("subsampling", warnings, B.any(delta >= 1), "delta < 1 does not hold")
        exp_term = 5 * B.exp(-(delta**2) * mu / 3)
        additive = (
            (c + b + 2)
            * B.log(s)
            * (49 * _ratio_pow(B, s, b) + 3 * _pow2_half(B, s))
        )
        return probability(B, exp_term, additive, warnings)


def mu_bar(
    i: "ArrayLike", f: "ArrayLike", sigma_size: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Expected layer size bound ``|Sigma| f^i / i!``."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        i, f, s = map(B.asarray, (i, f, sigma_size))
        if B.any(f <= 0) or B.any(i < 1):
            raise DomainError("mu_bar needs f > 0 and i >= 1.")
        warnings: list[str] = []
        flag("mu_bar", warnings, B.any(f > B.asarray(0.5)), "f <= 1/2 does not hold")
        return real(B, B.exp(_log_mu_bar(B, i, f, s)), warnings)


def layer_upper_tail(
    i: "ArrayLike",
    delta: "ArrayLike",
    f: "ArrayLike",
    sigma_size: "ArrayLike",
    backend: "Backend" = None,
) -> BoundResult:
    """Upper tail of layer ``i``: the tornado upper tail with ``mu`` replaced by ``mu_bar_i``."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        level = mu_bar(i, f, sigma_size, backend=backend)
        tail = upper_tail_tornado(delta, level.raw, backend=backend)
    return BoundResult(
        tail.value,
        tail.raw,
        tail.exp_term,
        tail.additive_term,
        tail.vacuous,
        level.warnings + tail.warnings,
    )
