"""Monte Carlo experiments comparing tornado tabulation with its bounds and a random oracle."""
import logging
import math
import typing as tp
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tornadotab.core.bounds import (
    classic_chernoff,
    coupling_sizes,
    independence_failure_bound,
    layer_upper_tail,
    mu_bar,
    pretty1_bound,
    upper_tail_tornado,
)
from tornadotab.core.errors import ConfigError, InputError, UnsupportedError
from tornadotab.core.hashing import oracle_new, tornado_derive, tornado_new
from tornadotab.core.independence import derived_keys_independent
from tornadotab.core.selection import (
    Selector,
    buckets_by_last_char,
    conditional_expectation_estimate,
    conditional_expectation_exact,
    layer_profile,
    make_hbar_fixture,
    select,
)
from tornadotab.core.sketches import (
    bottomk_build,
    bottomk_distinct_estimate,
    fill_count,
    frequency_estimate,
    jaccard_estimate,
    signed_projection,
    threshold_sample,
    vectork_build,
)
from tornadotab.core.stats import mean_and_sem, wilson_interval

from .keys import key_set
from .report import OUT_OF_THEOREM, THEOREM, Report, TailReport
from .runner import check_memory, derive_seed, run_trials

if tp.TYPE_CHECKING:
    from .config import ExperimentConfig

logger = logging.getLogger(__name__)

SIGMAS = 4
BOUND_BACKEND = "numpy"
JACCARD_FILL_P = 0.01


@dataclass(frozen=True)
class Experiment:
    name: str
    description: str
    run: tp.Callable[["ExperimentConfig"], Report]


def _keys(config: "ExperimentConfig") -> np.ndarray:
    return key_set(config.generator, config.n, config.params)


def _selector(config: "ExperimentConfig") -> Selector:
    return Selector(config.t, config.mask)


def _seed(config: "ExperimentConfig", r: int, stream: str | None = None) -> int:
    return derive_seed(config.master_seed, stream or config.kind, r)


def _derived(hasher, selected: np.ndarray) -> np.ndarray:
    return np.atleast_2d(tornado_derive(hasher, selected))


def _frequency(hits: int, trials: int, prefix: str = "") -> dict[str, tp.Any]:
    low, high = wilson_interval(hits, trials)
    return {
        f"{prefix}hits": hits,
        f"{prefix}frequency": hits / trials,
        f"{prefix}ci_low": low,
        f"{prefix}ci_high": high,
    }


def _half_width(row: dict, prefix: str = "") -> float:
    return (row[f"{prefix}ci_high"] - row[f"{prefix}ci_low"]) / 2


def _bound(result) -> float:
    return float(result.value)


def regime(config: "ExperimentConfig") -> tuple[str, list[str]]:
    """Whether the run meets the preconditions of the tornado tail bounds.

    Violations never stop a run; they are listed and the report is marked
    out-of-theorem.
    """
    s = config.sigma_size
    mu = float(config.mu)
    reasons = []
    if s < 1 << 16:
        reasons.append(f"|Sigma| = {s} < 2^16")
    if config.c > math.log(s):
        reasons.append(f"c = {config.c} > ln|Sigma|")
    if config.kind == "lower_tail" and not s / 4 <= mu <= s / 2:
        reasons.append(f"mu = {mu:g} outside [|Sigma|/4, |Sigma|/2]")
    if config.kind in ("upper_tail", "layers", "independence") and mu > s / 2:
        reasons.append(f"mu = {mu:g} > |Sigma|/2")
    for reason in reasons:
        logger.warning("%s run is out of theorem: %s", config.kind, reason)
    return (OUT_OF_THEOREM if reasons else THEOREM), reasons


def _need_derived(config: "ExperimentConfig") -> None:
    if config.d < 1:
        raise ConfigError(f"The {config.kind} experiment needs d >= 1.")


# Tail experiments


def tail_trial(config: "ExperimentConfig", r: int) -> tuple[int, bool | None, int | None]:
    """Selection size, independence of the selection and oracle selection size of one trial.

    Independence is only decided when the size reaches the smallest upper tail
    threshold, since the event needs both.
    """
    seed = _seed(config, r)
    keys = _keys(config)
    selector = _selector(config)
    hasher = tornado_new(seed, config.params)
    result = select(keys, hasher, selector)
    independent = None
    if config.kind == "upper_tail":
        threshold = (1 + min(config.deltas)) * float(config.mu)
        if result.size and result.size >= threshold:
            independent = derived_keys_independent(_derived(hasher, result.selected))
    oracle_size = None
    if config.baseline:
        oracle_size = select(keys, oracle_new(seed, config.params), selector).size
    return result.size, independent, oracle_size


def _tail_rows(config, records, lower: bool) -> list[dict[str, tp.Any]]:
    trials = len(records)
    mu = float(config.mu)
    sizes = np.array([rec[0] for rec in records], dtype=np.int64)
    independent = np.array([bool(rec[1]) for rec in records])
    rows = []
    for delta in config.deltas:
        threshold = (1 - delta) * mu if lower else (1 + delta) * mu
        row: dict[str, tp.Any] = {"delta": float(delta), "threshold": threshold}
        if lower:
            event = sizes < threshold
            row.update(_frequency(int(event.sum()), trials))
            bound = pretty1_bound(
                delta, mu, config.sigma_size, 1, config.c, backend=BOUND_BACKEND
            )
            row["pretty1"] = _bound(bound)
        else:
            large = sizes >= threshold
            row.update(_frequency(int((large & independent).sum()), trials))
            row["dependent"] = int((large & ~independent).sum())
            row["upper_tail"] = _bound(upper_tail_tornado(delta, mu, backend=BOUND_BACKEND))
        row["classic"] = _bound(classic_chernoff(delta, mu, backend=BOUND_BACKEND))
        if config.baseline:
            oracle = np.array([rec[2] for rec in records], dtype=np.int64)
            event = oracle < threshold if lower else oracle >= threshold
            row.update(_frequency(int(event.sum()), trials, "oracle_"))
        rows.append(row)
    return rows


def _run_tail(config: "ExperimentConfig", lower: bool) -> TailReport:
    check_memory(config)
    status, reasons = regime(config)
    records = run_trials(tail_trial, config)
    rows = _tail_rows(config, records, lower)
    bound_column = "pretty1" if lower else "upper_tail"
    columns = ["delta", "threshold", "hits", "frequency", "ci_low", "ci_high"]
    columns += [] if lower else ["dependent"]
    columns += [bound_column, "classic"]
    if config.baseline:
        columns += ["oracle_hits", "oracle_frequency", "oracle_ci_low", "oracle_ci_high"]
    report = TailReport(config, tuple(columns), rows, status, warnings=reasons)
    for row in rows:
        slack = SIGMAS * _half_width(row)
        report.check(
            f"{bound_column}[delta={row['delta']:g}]",
            row["frequency"] <= row[bound_column] + slack,
            f"frequency {row['frequency']:.6g} vs bound {row[bound_column]:.6g} + {slack:.3g}",
        )
        if not config.baseline:
            continue
        oracle_slack = SIGMAS * _half_width(row, "oracle_")
        report.check(
            f"oracle_classic[delta={row['delta']:g}]",
            row["oracle_frequency"] <= row["classic"] + oracle_slack,
            f"oracle frequency {row['oracle_frequency']:.6g} vs {row['classic']:.6g}",
        )
        if lower:
            slack = SIGMAS * (_half_width(row) + 3 * _half_width(row, "oracle_"))
            report.check(
                f"oracle_ratio[delta={row['delta']:g}]",
                row["frequency"] <= 3 * row["oracle_frequency"] + slack,
                f"frequency {row['frequency']:.6g} vs 3 x oracle "
                f"{row['oracle_frequency']:.6g} + {slack:.3g}",
            )
    report.summary = {"mu": float(config.mu), "trials": len(records)}
    return report


def run_lower_tail(config: "ExperimentConfig") -> TailReport:
    """Empirical ``Pr[|X| < (1-delta) mu]`` against the tornado and classic bounds."""
    return _run_tail(config, lower=True)


def run_upper_tail(config: "ExperimentConfig") -> TailReport:
    """Empirical ``Pr[|X| >= (1+delta) mu]`` jointly with independent derived keys."""
    return _run_tail(config, lower=False)


# Layers


def layers_trial(config: "ExperimentConfig", r: int):
    hasher = tornado_new(_seed(config, r), config.params)
    result = select(_keys(config), hasher, _selector(config))
    profile = layer_profile(buckets_by_last_char(result, hasher))
    # J: independence of the derived keys without their last character
    independent = result.size == 0 or derived_keys_independent(
        _derived(hasher, result.selected)[:, :-1]
    )
    return profile, bool(independent)


def run_layers(config: "ExperimentConfig") -> Report:
    """Layer sizes ``S_i [J]`` against ``mu_bar_i`` and the layer upper tails."""
    _need_derived(config)
    check_memory(config)
    status, reasons = regime(config)
    records = run_trials(layers_trial, config)
    trials = len(records)
    profiles = [rec[0] for rec in records]
    independent = np.array([rec[1] for rec in records], dtype=np.int64)
    length = max((p.max_bucket for p in profiles), default=0)
    layers = np.stack([p.padded(length) for p in profiles]) if length else None
    s = config.sigma_size
    f = float(config.mu) / s
    rows = []
    report = Report(config, (), rows, status, warnings=reasons, profiles=profiles)
    previous = math.inf
    for i in range(1, length + 1):
        values = layers[:, i - 1] * independent
        mean, std, sem = mean_and_sem(values)
        level = float(mu_bar(i, f, s, backend=BOUND_BACKEND).value)
        report.check(
            f"mean[i={i}]",
            mean <= level + SIGMAS * sem,
            f"mean {mean:.6g} vs mu_bar {level:.6g} + {SIGMAS * sem:.3g}",
        )
        report.check(f"monotone[i={i}]", mean <= previous, f"mean {mean:.6g}")
        previous = mean
        for delta in config.deltas:
            hits = int(((layers[:, i - 1] > (1 + delta) * level) & (independent == 1)).sum())
            row = {"i": i, "delta": float(delta), "mean": mean, "std": std, "sem": sem}
            row["mu_bar"] = level
            row.update(_frequency(hits, trials, "tail_"))
            row["tail_bound"] = _bound(
                layer_upper_tail(i, delta, f, s, backend=BOUND_BACKEND)
            )
            slack = SIGMAS * _half_width(row, "tail_")
            report.check(
                f"tail[i={i},delta={delta:g}]",
                row["tail_frequency"] <= row["tail_bound"] + slack,
                f"frequency {row['tail_frequency']:.6g} vs {row['tail_bound']:.6g}",
            )
            rows.append(row)
    report.columns = (
        "i",
        "delta",
        "mean",
        "std",
        "sem",
        "mu_bar",
        "tail_hits",
        "tail_frequency",
        "tail_ci_low",
        "tail_ci_high",
        "tail_bound",
    )
    report.summary = {
        "mu": float(config.mu),
        "f": f,
        "trials": trials,
        "independent_trials": int(independent.sum()),
        "max_bucket": length,
    }
    return report


# Conditional translation


def cond_trial(config: "ExperimentConfig", r: int):
    """``S_i`` under the sampled hash function and ``E[S_i | hbar]`` for its ``hbar``."""
    hasher = tornado_new(_seed(config, r), config.params)
    fixture = make_hbar_fixture(hasher, _keys(config), _selector(config))
    actual = fixture.profile(hasher.last_table).layer(config.layer)
    if config.inner == "exact":
        expected = conditional_expectation_exact(fixture)
    else:
        inner_seed = _seed(config, r, f"{config.kind}/inner")
        expected = conditional_expectation_estimate(
            fixture, config.inner_trials, seed=inner_seed
        )
    return actual, expected.layer(config.layer)


def run_cond_translation(config: "ExperimentConfig") -> Report:
    """Check ``Pr[E[S_i | hbar] >= lambda + 1] <= 2 Pr[S_i >= lambda]`` for every ``lambda``."""
    _need_derived(config)
    check_memory(config)
    status, reasons = regime(config)
    records = run_trials(cond_trial, config)
    trials = len(records)
    actual = [rec[0] for rec in records]
    expected = [rec[1] for rec in records]
    top = max(max(actual, default=0), math.ceil(max(expected, default=0))) + 1
    report = Report(config, (), [], status, warnings=reasons)
    for lam in range(top + 1):
        row: dict[str, tp.Any] = {"lambda": lam}
        row.update(_frequency(sum(e >= lam + 1 for e in expected), trials, "left_"))
        row.update(_frequency(sum(a >= lam for a in actual), trials, "right_"))
        slack = SIGMAS * (_half_width(row, "left_") + 2 * _half_width(row, "right_"))
        row["slack"] = slack
        row["holds"] = row["left_frequency"] <= 2 * row["right_frequency"] + slack
        report.check(
            f"translation[lambda={lam}]",
            row["holds"],
            f"{row['left_frequency']:.6g} vs 2 x {row['right_frequency']:.6g} + {slack:.3g}",
        )
        report.rows.append(row)
    report.columns = (
        "lambda",
        "left_hits",
        "left_frequency",
        "left_ci_low",
        "left_ci_high",
        "right_hits",
        "right_frequency",
        "right_ci_low",
        "right_ci_high",
        "slack",
        "holds",
    )
    report.summary = {
        "layer": config.layer,
        "inner": config.inner,
        "trials": trials,
        "mean_actual": float(np.mean(actual)),
        "mean_expected": float(np.mean([float(e) for e in expected])),
    }
    return report


# Independence


def independence_trial(config: "ExperimentConfig", r: int) -> tuple[bool, ...]:
    """Independence of the selected keys' derived prefixes with ``1..d`` derived characters.

    A dependent prefix makes every shorter prefix dependent, so the scan stops
    at the first independent one.
    """
    hasher = tornado_new(_seed(config, r), config.params)
    result = select(_keys(config), hasher, _selector(config))
    if result.size == 0:
        return (True,) * config.d
    chars = _derived(hasher, result.selected)
    flags = []
    independent = False
    for j in range(1, config.d + 1):
        if not independent:
            independent = derived_keys_independent(chars[:, : config.c + j])
        flags.append(bool(independent))
    return tuple(flags)


def run_independence(config: "ExperimentConfig") -> Report:
    """Frequency of linearly dependent derived keys against the failure bounds."""
    _need_derived(config)
    check_memory(config)
    status, reasons = regime(config)
    records = np.array(run_trials(independence_trial, config), dtype=bool)
    trials = records.shape[0]
    mu = float(config.mu)
    s = config.sigma_size
    report = Report(config, (), [], status, warnings=reasons)
    for j in range(1, config.d + 1):
        failures = int((~records[:, j - 1]).sum())
        row: dict[str, tp.Any] = {"derived": j}
        row.update(_frequency(failures, trials))
        row["bound_old"] = _bound(
            independence_failure_bound(mu, s, j, "old", backend=BOUND_BACKEND)
        )
        row["bound_new"] = None
        if config.n:
            row["bound_new"] = _bound(
                independence_failure_bound(
                    mu, s, j, "new", n=config.n, c=config.c, backend=BOUND_BACKEND
                )
            )
        row["bound_above_ci"] = row["bound_old"] > row["ci_high"]
        report.check(
            f"consistent[d={j}]",
            row["ci_low"] <= row["bound_old"],
            f"ci_low {row['ci_low']:.6g} vs bound {row['bound_old']:.6g}",
        )
        report.rows.append(row)
    full = report.rows[-1]
    if full["bound_old"] * trials < 1:
        report.check(
            "no_dependence",
            full["hits"] == 0,
            f"{full['hits']} dependent selections in {trials} trials",
        )
    report.columns = (
        "derived",
        "hits",
        "frequency",
        "ci_low",
        "ci_high",
        "bound_old",
        "bound_new",
        "bound_above_ci",
    )
    report.summary = {"mu": mu, "trials": trials}
    return report


# Sketch accuracy


def _even(keys: np.ndarray) -> np.ndarray:
    return keys % np.uint64(2) == 0


def _jaccard_sets(config: "ExperimentConfig") -> tuple[np.ndarray, np.ndarray]:
    """Two key sets overlapping in a third of their union."""
    m = config.jaccard_union // 3
    return np.arange(0, 2 * m, dtype=np.uint64), np.arange(m, 3 * m, dtype=np.uint64)


def sketch_trial(config: "ExperimentConfig", r: int) -> tuple[float, float, float, float]:
    hasher = tornado_new(_seed(config, r), config.params)
    keys = _keys(config)
    distinct = bottomk_distinct_estimate(bottomk_build(keys, hasher, config.sketch_k))
    a, b = _jaccard_sets(config)
    fill = fill_count(a.shape[0], config.jaccard_k, JACCARD_FILL_P)
    va = vectork_build(a, hasher, config.jaccard_k, fill=fill)
    vb = vectork_build(b, hasher, config.jaccard_k, fill=fill)
    try:
        jaccard = jaccard_estimate(va, vb)
    except InputError:
        jaccard = math.nan
    try:
        dot = float(signed_projection(va) @ signed_projection(vb))
    except UnsupportedError:
        dot = math.nan
    sample = threshold_sample(keys, hasher, Fraction(1, 1 << config.frequency_t))
    try:
        frequency = frequency_estimate(sample, _even)
    except InputError:
        frequency = math.nan
    return distinct, jaccard, dot, frequency


def run_sketch_accuracy(config: "ExperimentConfig") -> Report:
    """Mean and spread of the bottom-k, Jaccard, dot product and frequency estimators."""
    if config.jaccard_union < 3:
        raise ConfigError("jaccard_union must be at least 3.")
    check_memory(config)
    status, reasons = regime(config)
    records = np.array(run_trials(sketch_trial, config), dtype=np.float64)
    keys = _keys(config)
    truths = {
        "bottomk_distinct": float(keys.shape[0]),
        "jaccard": 1 / 3,
        "signed_dot": 1 / 3,
        "frequency": float(np.count_nonzero(_even(keys))) / max(1, keys.shape[0]),
    }
    report = Report(config, (), [], status, warnings=reasons)
    for column, (name, truth) in enumerate(truths.items()):
        values = records[:, column]
        values = values[np.isfinite(values)]
        row: dict[str, tp.Any] = {"estimator": name, "truth": truth, "used": values.size}
        row["skipped"] = records.shape[0] - values.size
        if values.size:
            mean, std, sem = mean_and_sem(values)
            row.update(mean=mean, std=std, sem=sem)
            row["z"] = (mean - truth) / sem if sem else 0.0
            report.check(
                name,
                abs(mean - truth) <= SIGMAS * sem,
                f"mean {mean:.6g} vs truth {truth:.6g}, sem {sem:.3g}",
            )
        report.rows.append(row)
    report.columns = ("estimator", "truth", "mean", "std", "sem", "z", "used", "skipped")
    report.summary = {
        "trials": records.shape[0],
        "sketch_k": config.sketch_k,
        "jaccard_k": config.jaccard_k,
        "jaccard_fill": fill_count(
            2 * (config.jaccard_union // 3), config.jaccard_k, JACCARD_FILL_P
        ),
        "frequency_p": 2.0**-config.frequency_t,
    }
    return report


# Coupling


def coupling_trial(config: "ExperimentConfig", r: int) -> tuple[int, int, int]:
    """Tornado selection size on the keys and oracle sizes on the coupled key counts."""
    seed = _seed(config, r)
    selector = _selector(config)
    sizes = coupling_sizes(config.n, config.sigma_size, config.coupling_p)
    tornado = select(_keys(config), tornado_new(seed, config.params), selector).size
    oracle = oracle_new(seed, config.params)
    upper = select(np.arange(sizes.upper, dtype=np.uint64), oracle, selector).size
    lower = select(np.arange(sizes.lower, dtype=np.uint64), oracle, selector).size
    return tornado, upper, lower


def run_coupling_count(config: "ExperimentConfig") -> Report:
    """How often the tornado selection escapes the two coupled oracle selections."""
    sizes = coupling_sizes(config.n, config.sigma_size, config.coupling_p)
    if config.params.key_bits < 64 and sizes.upper > 1 << config.params.key_bits:
        raise ConfigError(f"{sizes.upper} coupled keys do not fit the key size.")
    check_memory(config)
    status, reasons = regime(config)
    records = np.array(run_trials(coupling_trial, config), dtype=np.int64)
    trials = records.shape[0]
    report = Report(config, (), [], status, warnings=reasons)
    sides = (
        ("upper", sizes.upper, records[:, 0] > records[:, 1], sizes.upper_failure),
        ("lower", sizes.lower, records[:, 0] < records[:, 2], sizes.lower_failure),
    )
    for side, size, violated, stated in sides:
        row: dict[str, tp.Any] = {"side": side, "keys": config.n, "coupled_keys": size}
        row.update(_frequency(int(violated.sum()), trials))
        row["stated"] = stated
        slack = SIGMAS * _half_width(row)
        report.check(
            f"coupling_{side}",
            row["frequency"] <= stated + slack,
            f"frequency {row['frequency']:.6g} vs {stated:.6g} + {slack:.3g}",
        )
        report.rows.append(row)
    report.columns = (
        "side",
        "keys",
        "coupled_keys",
        "hits",
        "frequency",
        "ci_low",
        "ci_high",
        "stated",
    )
    report.summary = {
        "trials": trials,
        "p": config.coupling_p,
        "mean_tornado": float(records[:, 0].mean()),
        "mean_upper": float(records[:, 1].mean()),
        "mean_lower": float(records[:, 2].mean()),
    }
    return report


EXPERIMENTS = {
    e.name: e
    for e in (
        Experiment(
            "lower_tail",
            "Lower tail of the selection size vs the tornado and classic Chernoff bounds.",
            run_lower_tail,
        ),
        Experiment(
            "upper_tail",
            "Upper tail of the selection size jointly with independence of the derived keys.",
            run_upper_tail,
        ),
        Experiment(
            "layers",
            "Mean and upper tail of the layer sizes S_i against mu_bar_i.",
            run_layers,
        ),
        Experiment(
            "cond_translation",
            "Tail of E[S_i | hbar] against twice the tail of S_i.",
            run_cond_translation,
        ),
        Experiment(
            "independence",
            "Frequency of linearly dependent derived selected keys vs the failure bound.",
            run_independence,
        ),
        Experiment(
            "sketch_accuracy",
            "Bias of the bottom-k, Jaccard, dot product and frequency estimators.",
            run_sketch_accuracy,
        ),
        Experiment(
            "coupling_count",
            "Tornado selection size sandwiched between coupled fully random selections.",
            run_coupling_count,
        ),
    )
}


def list_experiments() -> list[tuple[str, str]]:
    return [(e.name, e.description) for e in EXPERIMENTS.values()]


def run_experiment(config: "ExperimentConfig") -> Report:
    """Run the experiment named by ``config.kind`` and write its files when an output is set."""
    logger.info("Starting %s experiment (config %s)", config.kind, config.sha256[:12])
    report = EXPERIMENTS[config.kind].run(config)
    if config.output:
        report.write(config.output)
    logger.info(
        "Finished %s: %s", config.kind, "passed" if report.passed else f"failed {report.failed}"
    )
    return report
