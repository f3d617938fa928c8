import itertools
from fractions import Fraction

import numpy as np
import pytest
from tornadotab import _hashing, _selection
from tornadotab.core.errors import ParameterError, UnsupportedError
from tornadotab.core.hashing import HashParams
from tornadotab.core.selection import (
    Selector,
    expected_layer_profile,
    profile_from_sizes,
    resampled_last_table,
)
from tornadotab.core.utils import top_bits

from .conftest import BACKENDS, OUT_DIR

# |Sigma| = 4 and 2-bit hash values: 4**4 = 256 possible last tables
TINY = HashParams(c=2, d=1, char_bits=2, range_bits=2)


def _all_last_tables(params):
    values = range(1 << params.range_bits)
    for table in itertools.product(values, repeat=params.sigma_size):
        yield np.array(table, dtype=np.uint64)


@pytest.mark.parametrize("backend", BACKENDS)
def test_select(backend, rng):
    params = HashParams(4, 2, 8, 32)
    h = _hashing.tornado_new(1, params, backend=backend)
    keys = rng.integers(0, 1 << 32, size=5000, dtype=np.uint64)
    keys = np.concatenate([keys, keys[:100]])
    selector = Selector(t=3, mask_value=5)
    res = _selection.select(keys, h, selector, backend=backend)

    assert res.n == np.unique(keys).size
    assert res.mu == Fraction(res.n, 8)
    assert np.unique(res.selected).size == res.size
    assert np.all(top_bits(res.hashes, 3, 32) == 5)
    assert np.array_equal(res.hashes, _hashing.tornado_hash(h, res.selected, backend=backend))
    everything = _hashing.tornado_hash(h, np.unique(keys), backend=backend)
    assert res.size == int(np.count_nonzero((everything >> np.uint64(29)) == 5))

    # t = 0 selects everything
    res = _selection.select(keys, h, Selector(0), backend=backend)
    assert res.size == res.n


def test_selection_size_mean():
    n, t, trials = 1 << 10, 2, 1000
    params = HashParams(4, 2, 8, 32)
    # distinct scrambled 32-bit keys
    keys = (np.arange(n, dtype=np.uint64) * np.uint64(0x9E3779B97F4A7C15)) & np.uint64(
        0xFFFFFFFF
    )
    sizes = [
        _selection.select(keys, _hashing.tornado_new(seed, params), Selector(t)).size
        for seed in range(trials)
    ]
    p = 1 / (1 << t)
    sem = np.sqrt(n * p * (1 - p) / trials)
    assert abs(np.mean(sizes) - n * p) < 3 * sem


def test_selector_validation():
    with pytest.raises(ParameterError):
        Selector(2, 4)
    with pytest.raises(ParameterError):
        Selector(-1)
    h = _hashing.tornado_new(0, TINY)
    with pytest.raises(ParameterError):
        _selection.select([1, 2], h, Selector(3))


@pytest.mark.parametrize("backend", BACKENDS)
def test_buckets_and_layers(backend, rng):
    params = HashParams(2, 3, 8, 64)
    h = _hashing.tornado_new(77, params, backend=backend)
    keys = rng.integers(0, 1 << 16, size=3000, dtype=np.uint64)
    res = _selection.select(keys, h, Selector(2, 1), backend=backend)
    b = _selection.buckets_by_last_char(res, h, backend=backend)

    last = _hashing.tornado_derive(h, res.selected, backend=backend)[:, -1]
    assert np.array_equal(b.labels, last)
    assert b.total == res.size == int(b.sizes.sum())
    for alpha, members in b.buckets.items():
        assert members.size == b.sizes[alpha]
        assert np.all(last[np.isin(res.selected, members)] == alpha)

    prof = _selection.layer_profile(b)
    expected = [int(np.count_nonzero(b.sizes >= i)) for i in range(1, b.sizes.max() + 1)]
    assert prof.s_i.tolist() == expected
    assert prof.total == res.size
    assert np.all(np.diff(prof.s_i) <= 0)
    assert prof.layer(prof.max_bucket + 1) == 0
    assert prof.padded(prof.max_bucket + 3)[-3:].tolist() == [0, 0, 0]


def test_buckets_need_tornado():
    params = HashParams(2, 1, 4, 16)
    o = _hashing.oracle_new(0, params)
    res = _selection.select(np.arange(10), o, Selector(0))
    with pytest.raises(UnsupportedError):
        _selection.buckets_by_last_char(res, o)
    h = _hashing.tornado_new(0, HashParams(2, 0, 4, 16))
    with pytest.raises(UnsupportedError):
        _selection.buckets_by_last_char(_selection.select(np.arange(10), h, Selector(0)), h)


def test_empty_selection():
    h = _hashing.tornado_new(5, TINY)
    res = _selection.select(np.zeros(0, dtype=np.uint64), h, Selector(1))
    assert res.size == 0 and res.mu == 0
    prof = _selection.layer_profile(_selection.buckets_by_last_char(res, h))
    assert prof.max_bucket == 0 and prof.total == 0
    assert profile_from_sizes([]).max_bucket == 0


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("t", [0, 1, 2])
def test_conditional_expectation_exact(seed, t):
    h = _hashing.tornado_new(seed, TINY)
    keys = np.arange(16, dtype=np.uint64)
    fixture = _selection.make_hbar_fixture(h, keys, Selector(t, 0))
    exact = _selection.conditional_expectation_exact(fixture)

    # average over every possible last table
    total = Fraction(0)
    layers: dict[int, Fraction] = {}
    tables = list(_all_last_tables(TINY))
    for table in tables:
        prof = fixture.profile(table)
        total += prof.total
        for i, s in enumerate(prof.s_i.tolist(), start=1):
            layers[i] = layers.get(i, Fraction(0)) + s
    count = len(tables)
    assert exact.size == total / count == fixture.mu
    top = max(layers, default=0)
    assert [exact.layer(i) for i in range(1, top + 2)] == [
        layers.get(i, Fraction(0)) / count for i in range(1, top + 2)
    ]


@pytest.mark.parametrize("backend", BACKENDS)
def test_fixture_profile_matches_selection(backend, rng):
    params = HashParams(3, 2, 6, 24)
    h = _hashing.tornado_new(3, params, backend=backend)
    keys = rng.integers(0, 1 << 18, size=400, dtype=np.uint64)
    selector = Selector(2, 3)
    fixture = _selection.make_hbar_fixture(h, keys, selector, backend=backend)
    res = _selection.select(keys, h, selector, backend=backend)
    direct = _selection.layer_profile(_selection.buckets_by_last_char(res, h, backend=backend))
    assert np.array_equal(fixture.profile(h.last_table).s_i, direct.s_i)
    assert fixture.n == res.n


def test_conditional_expectation_estimate():
    params = HashParams(2, 2, 4, 8)
    h = _hashing.tornado_new(21, params)
    fixture = _selection.make_hbar_fixture(h, np.arange(64), Selector(2))
    exact = _selection.conditional_expectation_exact(fixture)
    est = _selection.conditional_expectation_estimate(fixture, 4000, seed=8)
    assert est.trials == 4000
    assert abs(est.size - float(exact.size)) <= 4 * est.size_sem
    for i in range(1, 4):
        assert abs(est.layer(i) - float(exact.layer(i))) < 0.25

    again = _selection.conditional_expectation_estimate(fixture, 4000, seed=8)
    assert again.s_i == est.s_i
    assert not np.array_equal(resampled_last_table(fixture, 8, 0), resampled_last_table(fixture, 8, 1))
    with pytest.raises(ParameterError):
        _selection.conditional_expectation_estimate(fixture, 0)


def test_expected_layer_profile():
    curve = expected_layer_profile(128, 256, 4, backend="numpy")
    f = 0.5
    assert np.allclose(curve, [256 * f**i / np.prod(range(1, i + 1)) for i in range(1, 5)])
    assert curve[0] == pytest.approx(128)


def test_write_layer_csv(tmp_path):
    profiles = [profile_from_sizes([0, 2, 1, 0]), profile_from_sizes([3, 0])]
    path = (OUT_DIR or tmp_path) / "layers.csv"
    _selection.write_layer_csv(path, profiles)
    assert path.read_text().splitlines() == [
        "trial,i,S_i",
        "0,1,2",
        "0,2,1",
        "1,1,1",
        "1,2,1",
        "1,3,1",
    ]
    _selection.write_layer_csv(path, {7: profiles[0]})
    assert path.read_text().splitlines()[1] == "7,1,2"
