import typing as tp

from tornadotab.core import bounds

if tp.TYPE_CHECKING:
    from tornadotab.core.bounds import BoundResult, SymbolTable, UglyBound
    from tornadotab.core.typing import ArrayLike, Backend


def classic_chernoff(
    delta: "ArrayLike",
    mu: "ArrayLike",
    /,
    *,
    backend: "Backend" = None,
) -> "BoundResult":
    r"""Two-sided Chernoff bound for a fully random selection.

    $$\Pr[|X - \mu| \geq \delta\mu] < 2\exp(-\mu\delta^2/3), \qquad \delta \in [0, 1].$$

    Parameters
    ----------
    delta: array_like
        Relative deviation in ``[0, 1]``.
    mu: array_like
        Expected selection size.
    backend: str
        The name of the backend used for computations. Use 'decimal' for a
        high-precision scalar evaluation.

    Returns
    -------
    bound: BoundResult
        The value clamped to ``[0, 1]`` and the unclamped value.
    """
    return bounds.classic_chernoff(delta, mu, backend=backend)


def upper_tail_tornado(
    delta: "ArrayLike",
    mu: "ArrayLike",
    /,
    *,
    backend: "Backend" = None,
) -> "BoundResult":
    r"""Upper tail bound for tornado tabulation selection.

    $$\Pr[|X| \geq (1+\delta)\mu \wedge \mathcal{I}] \leq
      \left(\frac{e^\delta}{(1+\delta)^{1+\delta}}\right)^\mu,$$

    where $\mathcal I$ is the event that the derived selected keys are linearly
    independent. The bound is evaluated as
    $\exp(\mu(\delta - (1+\delta)\log(1+\delta)))$.
    """
    return bounds.upper_tail_tornado(delta, mu, backend=backend)


def pretty1_bound(
    delta: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    b: "ArrayLike",
    c: "ArrayLike",
    /,
    *,
    backend: "Backend" = None,
) -> "BoundResult":
    r"""Lower tail bound for tornado tabulation selection.

    $$\Pr[|X| < (1-\delta)\mu] < 3\exp\left(\frac{-\delta^2\mu}{7}\right)
      + (c+b+1)\ln(s)\left(49\left(\frac{3}{s}\right)^b + 3\left(\frac{1}{2}\right)^{s/2}\right)$$

    for tornado tabulation with $c$ characters, $d = b + 3$ derived characters
    and tables of size $s$. The guarantee needs $b \geq 1$, $c \leq \ln s$,
    $s \geq 2^{16} b^2$ and $\mu \in [s/4, s/2]$. When one of them fails the
    value is still computed and the violation is listed in ``warnings``.

    Parameters
    ----------
    delta: array_like
        Relative deviation.
    mu: array_like
        Expected selection size.
    sigma_size: array_like
        Alphabet size $s$.
    b: array_like
        Number of derived characters beyond three.
    c: array_like
        Number of key characters.
    backend: str
        The name of the backend used for computations.

    Returns
    -------
    bound: BoundResult
        Clamped value with the exponential and additive terms.
    """
    return bounds.pretty1_bound(delta, mu, sigma_size, b, c, backend=backend)


def subsampling_bound(
    delta: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    b: "ArrayLike",
    c: "ArrayLike",
    /,
    *,
    backend: "Backend" = None,
) -> "BoundResult":
    r"""Two-sided threshold sampling bound with exponent factor 3.

    $$5\exp\left(\frac{-\delta^2\mu}{3}\right)
      + (c+b+2)\ln(s)\left(49\left(\frac{3}{s}\right)^b + 3\left(\frac{1}{2}\right)^{s/2}\right)$$

    for $\mu \leq s/278$ and $\delta < 1$.
    """
    return bounds.subsampling_bound(delta, mu, sigma_size, b, c, backend=backend)


def symbol_table(
    p: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: int,
    c: int,
    d: int,
    sel_bits: int,
    /,
    *,
    s_all: int = bounds.S_ALL,
    p_reg_variant: str = "table",
    backend: "Backend" = None,
) -> "SymbolTable":
    r"""Evaluate the constants of the lower tail deviation.

    Among them the error threshold of the regular layers

    $$p_{reg} = \frac{p}{\log_6\left(\frac{\mu/2}{\ln(s_{sec}/p)}\right) s_{all}},$$

    the first irregular layer $i_{nr} = \min\{i \geq 3 : \bar\mu_i < \ln(s_{all}/p_{reg})\}$
    and the deviation factors $\gamma_1$ and $\gamma_2$.

    Parameters
    ----------
    p: float
        Target probability in ``(0, 1)``.
    mu: float
        Expected selection size.
    sigma_size: int
        Alphabet size.
    c, d: int
        Key and derived characters.
    sel_bits: int
        Number of select bits.
    s_all: int
        Error scale per layer, 160 by default; 180 is accepted as well.
    p_reg_variant: str
        'table' uses $\ln(s_{sec}/p)$ inside the logarithm of $p_{reg}$,
        'prose' uses $\ln(1/p)$.
    backend: str
        The name of the backend used for computations.

    Returns
    -------
    symbols: SymbolTable
        All symbols; ``i_max_index`` is the ceiling of the real ``i_max``.
    """
    return bounds.symbol_table(
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


def ugly_bound(
    p: "ArrayLike",
    mu: "ArrayLike",
    sigma_size: int,
    c: int,
    d: int,
    sel_bits: int,
    /,
    *,
    s_all: int = bounds.S_ALL,
    p_reg_variant: str = "table",
    backend: "Backend" = None,
) -> "UglyBound":
    r"""Lower tail deviation with its failure probability.

    $$\Pr\left[X < \mu - \sqrt{\ln(1/p)\mu}\,\gamma_1 - \gamma_2\right] < 3p + P_{error}.$$

    Returns the deviation $\sqrt{\ln(1/p)\mu}\,\gamma_1 + \gamma_2$ and the
    probability; the result unpacks as ``deviation, probability``.
    """
    return bounds.ugly_bound(
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


def independence_failure_bound(
    mu: "ArrayLike",
    sigma_size: "ArrayLike",
    d: "ArrayLike",
    variant: str = "old",
    /,
    *,
    n: "ArrayLike | None" = None,
    c: "ArrayLike | None" = None,
    backend: "Backend" = None,
) -> "BoundResult":
    r"""Probability that the derived selected keys are linearly dependent.

    The 'old' variant is $7\mu^3(3/|\Sigma|)^{d+1} + 2^{-|\Sigma|/2}$, the 'new'
    one $3^c|\Sigma|/n \cdot 3\mu^3(3/|\Sigma|)^{d+1} + f^{|\Sigma|/2}$ with
    $f = \mu/|\Sigma|$. Both assume $\mu \leq |\Sigma|/2$.
    """
    return bounds.independence_failure_bound(
        mu, sigma_size, d, variant, n=n, c=c, backend=backend
    )


__all__ = [
    "classic_chernoff",
    "independence_failure_bound",
    "pretty1_bound",
    "subsampling_bound",
    "symbol_table",
    "ugly_bound",
    "upper_tail_tornado",
]
