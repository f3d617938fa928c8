import itertools
from collections import Counter

import numpy as np
import pytest
from tornadotab import _hashing, _independence
from tornadotab.core.errors import InputError, ParameterError, SizeError
from tornadotab.core.hashing import HashParams
from tornadotab.core.independence import (
    PositionChar,
    derived_dependency_witness,
    to_generalized,
    tuple_bound,
    zero_bound,
)

A, B, C, D = 0, 1, 2, 3


def _gen(*chars):
    return to_generalized(chars)


def _has_zero_subfamily(family) -> bool:
    """Subset enumeration in Gray code order over incidence bitsets."""
    columns: dict = {}
    rows = [sum(1 << columns.setdefault(pc, len(columns)) for pc in key) for key in family]
    acc = 0
    for step in range(1, 1 << len(rows)):
        acc ^= rows[(step & -step).bit_length() - 1]
        if acc == 0:
            return True
    return False


def _random_family(rng, size, c=2, sigma=3):
    return [
        to_generalized(rng.integers(0, sigma, size=c).tolist()) for _ in range(size)
    ]


def test_to_generalized():
    assert _gen(A, B) == {PositionChar(1, A), PositionChar(2, B)}
    assert _gen(A, B) == _gen(A, B)
    params = HashParams(2, 1, 4, 16)
    assert to_generalized(0x21, params) == _gen(1, 2)
    h = _hashing.tornado_new(0, params)
    derived = _hashing.tornado_derive(h, 0x21)
    assert len(to_generalized(derived)) == 3
    with pytest.raises(InputError):
        PositionChar(0, 1)


def test_sym_diff():
    assert _independence.sym_diff([_gen(A, B), _gen(A, B)]) == frozenset()
    square = [_gen(A, B), _gen(A, D), _gen(C, B), _gen(C, D)]
    assert _independence.sym_diff(square) == frozenset()
    assert _independence.sym_diff([_gen(A, B), _gen(A, D)]) == {
        PositionChar(2, B),
        PositionChar(2, D),
    }
    assert _independence.is_zero_set([_gen(A, B), _gen(A, B)])
    assert _independence.is_zero_set(square)
    assert not _independence.is_zero_set([_gen(A, B), _gen(A, D)])
    assert _independence.sym_diff([]) == frozenset()


def test_sym_diff_order_independent(rng):
    family = _random_family(rng, 9)
    shuffled = [family[i] for i in rng.permutation(9)]
    assert _independence.sym_diff(family) == _independence.sym_diff(shuffled)
    assert _independence.sym_diff(family + family) == frozenset()


def test_linear_independence_examples():
    assert _independence.is_linearly_independent([_gen(A, B)])
    assert _independence.is_linearly_independent([])
    square = [_gen(A, B), _gen(A, D), _gen(C, B), _gen(C, D)]
    assert not _independence.is_linearly_independent(square)
    assert _independence.dependency_witness(square) == (0, 1, 2, 3)
    assert _independence.dependency_witness([_gen(A, B), _gen(C, D), _gen(A, B)]) == (0, 2)
    assert _independence.is_linearly_independent(square[:3])


def test_linear_independence_against_enumeration(rng):
    disagreements = 0
    for _ in range(1000):
        size = int(rng.integers(1, 13))
        family = _random_family(rng, size, c=int(rng.integers(1, 4)), sigma=3)
        independent = _independence.is_linearly_independent(family)
        disagreements += independent == _has_zero_subfamily(family)
        witness = _independence.dependency_witness(family)
        assert (witness is None) == independent
        if witness is not None:
            assert list(witness) == sorted(set(witness))
            assert _independence.is_zero_set([family[i] for i in witness])
    assert disagreements == 0


def test_derived_keys_independent(rng):
    for _ in range(300):
        n, m = int(rng.integers(1, 13)), int(rng.integers(1, 4))
        chars = rng.integers(0, 3, size=(n, m))
        family = [to_generalized(row) for row in chars]
        witness = derived_dependency_witness(chars)
        assert (witness is None) == (not _has_zero_subfamily(family))
        assert _independence.derived_keys_independent(chars) == (witness is None)
        if witness is not None:
            assert _independence.is_zero_set([family[i] for i in witness])

    # every key owns a private character: peeled away completely
    chars = np.column_stack([np.arange(50), np.zeros(50, dtype=np.int64)])
    assert _independence.derived_keys_independent(chars)
    assert _independence.derived_keys_independent(np.zeros((0, 3), dtype=np.int64))
    assert derived_dependency_witness(np.array([[1, 2], [3, 4], [1, 2]])) == (0, 2)
    with pytest.raises(ValueError):
        derived_dependency_witness(np.arange(3))


def test_count_zero_ktuples():
    x, y = _gen(A, B), _gen(C, D)
    assert _independence.count_zero_ktuples([x], 4) == 1
    assert _independence.count_zero_ktuples([x, y], 4) == 8
    with pytest.raises(ParameterError):
        _independence.count_zero_ktuples([x, y], 3)
    with pytest.raises(ParameterError):
        _independence.count_zero_ktuples([x, y], 2)
    with pytest.raises(SizeError):
        _independence.count_zero_ktuples(_random_family(np.random.default_rng(0), 101), 4)


def test_count_against_enumeration(rng):
    for _ in range(20):
        family = _random_family(rng, int(rng.integers(1, 7)), c=2, sigma=4)
        for k in (4, 6) if len(family) <= 4 else (4,):
            expected = sum(
                _independence.is_zero_set(t) for t in itertools.product(family, repeat=k)
            )
            assert _independence.count_zero_ktuples(family, k) == expected
        target = family[0] ^ family[-1]
        expected = sum(
            _independence.sym_diff(t) == target for t in itertools.product(family, repeat=4)
        )
        assert _independence.count_symdiff_ktuples(family, 4, target) == expected
        assert _independence.count_symdiff_ktuples(family, 3, family[0]) == sum(
            _independence.sym_diff(t) == family[0]
            for t in itertools.product(family, repeat=3)
        )


def test_zero_bound():
    assert zero_bound(6, 2, 4) == 324
    assert zero_bound(1, 1, 4) == 3
    assert zero_bound(10, 3, 6) == 27 * 10**4
    assert tuple_bound(5, 2, 1) == 25 and tuple_bound(5, 2, 2) == 9 * 25
    assert tuple_bound(3, 1, 3) == 15 * 27


def test_zero_tuples_within_bound(rng):
    violations = 0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        c = int(rng.integers(1, 4))
        keys = {tuple(rng.integers(0, 4, size=c).tolist()) for _ in range(n)}
        family = [to_generalized(key) for key in keys]
        count = _independence.count_zero_ktuples(family, 4)
        violations += count > zero_bound(len(family), c, 4)
        violations += count > tuple_bound(len(family), c, 2)
    assert violations == 0


def test_independent_keys_hash_uniformly():
    params = HashParams(c=2, d=1, char_bits=1, range_bits=1)
    h = _hashing.tornado_new(4, params)
    derived = _hashing.tornado_derive(h, np.arange(4, dtype=np.uint64))
    positions = params.c + params.d
    tables = list(itertools.product((0, 1), repeat=2 * positions))
    for size in range(1, 5):
        for subset in itertools.combinations(range(4), size):
            rows = derived[list(subset)]
            counts: Counter = Counter()
            for flat in tables:
                top = np.array(flat).reshape(positions, 2)
                values = np.bitwise_xor.reduce(top[np.arange(positions), rows], axis=1)
                counts[tuple(values.tolist())] += 1
            uniform = len(counts) == 2**size and set(counts.values()) == {len(tables) >> size}
            assert uniform == _independence.derived_keys_independent(rows)
