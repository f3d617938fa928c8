import logging
import math
import typing as tp
from dataclasses import asdict, dataclass

from tornadotab.backend import backends
from tornadotab.core.errors import DomainError, ParameterError

from ._result import BoundResult, flag, probability
from ._tails import _log_mu_bar, _pow2_half, _ratio_pow

if tp.TYPE_CHECKING:
    from tornadotab.backend.base import ArrayBackend
    from tornadotab.core.typing import ArrayLike, Backend

logger = logging.getLogger(__name__)

S_SEC = 20
S_ALL = 160
S_ALL_PROSE = 180
P_REG_VARIANTS = ("table", "prose")
MAX_LAYER_SCAN = 10**6


@dataclass(frozen=True)
class SymbolTable:
    """The constants entering the lower tail deviation of tornado selection.

    Real-valued fields are floats under numpy and numba, and ``Decimal`` under the
    decimal backend. ``i_max`` is real; ``i_max_index`` is its ceiling.
    """

    s_sec: int
    s_all: int
    p_reg: tp.Any
    i_nr: int
    i_max: tp.Any
    i_max_index: int
    n_top: tp.Any
    p_top: tp.Any
    eps3: tp.Any
    delta_reg: tp.Any
    delta_inr: tp.Any
    delta_top: tp.Any
    delta_nonreg: tp.Any
    gamma1: tp.Any
    gamma2: tp.Any
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out = asdict(self)
        for key, value in out.items():
            if not isinstance(value, (int, tuple, str)):
                out[key] = float(value)
        out["warnings"] = list(self.warnings)
        return out


@dataclass(frozen=True)
class UglyBound:
    """Lower tail deviation and the probability that it is exceeded."""

    deviation: tp.Any
    probability: BoundResult
    symbols: SymbolTable

    def __iter__(self):
        return iter((self.deviation, self.probability))


def _scalar(B: "ArrayBackend", x):
    return x if not B.supports_arrays else float(x)


def _log6(B: "ArrayBackend", x):
    return B.log(x) / B.log(B.asarray(6))


def _first_irregular_layer(B: "ArrayBackend", f, s, threshold) -> int:
    """Smallest ``i >= 3`` with ``mu_bar_i < threshold``."""
    log_threshold = B.log(threshold)
    for i in range(3, MAX_LAYER_SCAN):
        if _log_mu_bar(B, B.asarray(i), f, s) < log_threshold:
            return i
    raise DomainError("No irregular layer found; mu_bar does not decay.")


def symbol_table(
    p: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: int,
    c: int,
    d: int,
    sel_bits: int,
    *,
    s_all: int = S_ALL,
    p_reg_variant: str = "table",
    backend: "Backend" = None,
) -> SymbolTable:
    """Evaluate every symbol of the lower tail deviation for scalar inputs.

    ``p_reg_variant="prose"`` uses ``ln(1/p)`` instead of ``ln(s_sec/p)`` inside
    the logarithm of ``p_reg``.
    """
    if p_reg_variant not in P_REG_VARIANTS:
        raise ParameterError(f"p_reg_variant must be one of {P_REG_VARIANTS}.")
    if s_all not in (S_ALL, S_ALL_PROSE):
        logger.warning("s_all=%s is neither %d nor %d", s_all, S_ALL, S_ALL_PROSE)
    B = backends.active if backend is None else backends[backend]
    name = "symbol_table"
    with B.precision():
        p, mu, s = map(B.asarray, (p, mu, sigma_size))
        if not (0 < p < 1) or not mu > 0:
            raise DomainError("symbol_table needs p in (0, 1) and mu > 0.")
        warnings: list[str] = []
        flag(name, warnings, mu < s / 4 or mu > s / 2, "mu in [s/4, s/2] does not hold")
        flag(name, warnings, s < 2**11, "|Sigma| >= 2^11 does not hold")
        s_sec_, s_all_ = B.asarray(S_SEC), B.asarray(s_all)
        log_inv_p = -B.log(p)
        inner = log_inv_p if p_reg_variant == "prose" else B.log(s_sec_ / p)
        ratio = mu / 2 / inner
        if not ratio > 1:
            raise DomainError(
                "p_reg is undefined: (mu/2) / ln(s_sec/p) must exceed 1."
            )
        p_reg = p / (_log6(B, ratio) * s_all_)
        i_nr = _first_irregular_layer(B, mu / s, s, B.log(s_all_ / p_reg))
        i_max = (d - 2) * B.log(s) + sel_bits * B.log(B.asarray(2))
        n_top = _log6(B, B.log(s_sec_ / p_reg) * s_all_ / p)
        if not n_top > 1:
            raise DomainError("n_top must exceed 1 for ln ln(n_top) to be defined.")
        p_top = B.minimum(p_reg / s_sec_, p / (n_top * s_all_))
        eps3 = (2 + B.sqrt(B.asarray(6))) * B.sqrt(B.log(s_sec_ / p) / s) + (
            log_inv_p / 2 + 6
        ) / mu
        c181 = B.asarray(0.181)
        delta_reg = (
            c181 * B.sqrt(log_inv_p * mu)
            + B.asarray(0.066) * B.sqrt(mu / log_inv_p)
            + B.sqrt(B.asarray(2))
        )
        delta_inr = B.asarray(1.33) * B.e * B.log(s_sec_ / p_reg) + 1
        delta_top = 2 * -B.log(p_top) * (2 + B.log(B.log(n_top))) + n_top
        delta_nonreg = delta_inr + delta_top + 3
        gamma1 = B.sqrt(B.asarray(7) / 3 * (1 + eps3)) + c181
        gamma2 = delta_reg - c181 * B.sqrt(log_inv_p * mu) + delta_nonreg + log_inv_p
        flag(
            name,
            warnings,
            gamma2 < B.asarray(8.6) * log_inv_p,
            "gamma2 >= 8.6 ln(1/p) does not hold",
        )
        flag(
            name,
            warnings,
            log_inv_p > mu / B.asarray(8.6),
            "ln(1/p) > mu/8.6: the deviation exceeds mu and the bound is trivial",
        )
        return SymbolTable(
            s_sec=S_SEC,
            s_all=s_all,
            p_reg=_scalar(B, p_reg),
            i_nr=i_nr,
            i_max=_scalar(B, i_max),
            i_max_index=int(math.ceil(float(i_max))),
            n_top=_scalar(B, n_top),
            p_top=_scalar(B, p_top),
            eps3=_scalar(B, eps3),
            delta_reg=_scalar(B, delta_reg),
            delta_inr=_scalar(B, delta_inr),
            delta_top=_scalar(B, delta_top),
            delta_nonreg=_scalar(B, delta_nonreg),
            gamma1=_scalar(B, gamma1),
            gamma2=_scalar(B, gamma2),
            warnings=tuple(warnings),
        )


def p_error(
    c: "ArrayLike", d: "ArrayLike", sigma_size: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Error term ``(c+d-2) ln(s) (49 (3/s)^(d-3) + 3 (1/2)^(s/2))`` of the lower tail."""
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        c, d, s = map(B.asarray, (c, d, sigma_size))
        warnings: list[str] = []
        flag("p_error", warnings, B.any(s < 2**11), "|Sigma| >= 2^11 does not hold")
        flag("p_error", warnings, B.any(c > B.log(s)), "c <= ln|Sigma| does not hold")
        flag("p_error", warnings, B.any(d <= 3), "d <= 3 leaves the bound near vacuous")
        additive = (
            (c + d - 2)
            * B.log(s)
            * (49 * _ratio_pow(B, s, d - 3) + 3 * _pow2_half(B, s))
        )
        return probability(B, B.asarray(0), additive, warnings)


def ugly_bound(
    p: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: int,
    c: int,
    d: int,
    sel_bits: int,
    *,
    s_all: int = S_ALL,
    p_reg_variant: str = "table",
    backend: "Backend" = None,
) -> UglyBound:
    """Deviation ``sqrt(ln(1/p) mu) gamma1 + gamma2`` exceeded with probability below ``3p + P_error``."""
    B = backends.active if backend is None else backends[backend]
    symbols = symbol_table(
        p,
        mu,
        sigma_size,
        c,
        d,
        sel_bits,
        s_all=s_all,
        p_reg_variant=p_reg_variant,
        backend=backend,
    )
    err = p_error(c, d, sigma_size, backend=backend)
    with B.precision():
        p_, mu_ = B.asarray(p), B.asarray(mu)
        deviation = (
            B.sqrt(-B.log(p_) * mu_) * B.asarray(symbols.gamma1)
            + B.asarray(symbols.gamma2)
        )
        prob = probability(
            B, 3 * p_, err.raw, list(symbols.warnings) + list(err.warnings)
        )
    return UglyBound(_scalar(B, deviation), prob, symbols)


def no_big_layers_bound(
    c: "ArrayLike", d: "ArrayLike", sigma_size: "ArrayLike", backend: "Backend" = None
) -> BoundResult:
    """Probability that a layer above ``i_max`` has non-zero expected size.

    ``(1/s)^(d-3) + 3^(c+1) (3/s)^(d-1) + (1/s)^(s/2-1)``.
    """
    B = backends.active if backend is None else backends[backend]
    with B.precision():
        c, d, s = map(B.asarray, (c, d, sigma_size))
        log_inv_s = -B.log(s)
        additive = (
            B.exp((d - 3) * log_inv_s)
            + B.exp((c + 1) * B.log(B.asarray(3))) * _ratio_pow(B, s, d - 1)
            + B.exp((s / 2 - 1) * log_inv_s)
        )
        return probability(B, B.asarray(0), additive, [])
