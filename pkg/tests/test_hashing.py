import numpy as np
import pytest
import scipy.stats as st
from tornadotab import _hashing
from tornadotab.core.errors import InputError, ParameterError, UnsupportedError
from tornadotab.core.hashing import (
    HashParams,
    fill_table,
    format_golden,
    hasher_fingerprint,
    pack_keys,
    philox4x32,
    read_golden,
    unpack_keys,
    write_golden,
)
from tornadotab.core.hashing._prng import ROLE_TOP

from .conftest import BACKENDS, DATA_DIR, OUT_DIR

N = 1000

GOLDEN_PARAMS = HashParams(c=4, d=3, char_bits=16, range_bits=64)
GOLDEN_SEED = 0x5EED5EED0BADF00D
GOLDEN_KEY = 0x0123456789ABCDEF
GOLDEN_DERIVED = [0xCDEF, 0x89AB, 0x4567, 0x08A2, 0xB13E, 0x635A, 0x311B]

# chi-square acceptance level of the uniformity tests
ALPHA = 1e-6

# counter words, key words, output words
PHILOX_KAT = [
    ((0, 0, 0, 0), (0, 0), (0x6627E8D5, 0xE169C58D, 0xBC57AC4C, 0x9B00DBD8)),
    (
        (0xFFFFFFFF,) * 4,
        (0xFFFFFFFF, 0xFFFFFFFF),
        (0x408F276D, 0x41C83B0E, 0xA20BC7C6, 0x6D5451FD),
    ),
    (
        (0x243F6A88, 0x85A308D3, 0x13198A2E, 0x03707344),
        (0xA4093822, 0x299F31D0),
        (0xD16CFE09, 0x94FDCCEB, 0x5001E420, 0x24126EA1),
    ),
]


def _reference_derive(h, chars):
    """Derived key of one key, one table lookup at a time."""
    p = h.params
    out = [int(ch) for ch in chars]
    for j in range(p.c - 1):
        out[p.c - 1] ^= int(h.twist_tables[j][out[j]])
    for i in range(p.d):
        v = 0
        for j in range(p.c + i):
            v ^= int(h.derive_tables[i][j][out[j]])
        out.append(v)
    return out


def _reference_hash(h, key):
    chars = unpack_keys(key, h.params)
    v = 0
    for j, ch in enumerate(_reference_derive(h, chars)):
        v ^= int(h.top_tables[j][ch])
    return v


def _random_keys(rng, params, n=N):
    return rng.integers(0, 1 << params.key_bits, size=n, dtype=np.uint64)


@pytest.mark.parametrize("counter,key,expected", PHILOX_KAT)
def test_philox_known_answers(counter, key, expected):
    out = philox4x32(counter, key)
    assert tuple(int(w) for w in out) == expected


@pytest.mark.parametrize("backend", BACKENDS)
def test_fill_table(backend):
    seed = 0x0123456789ABCDEF
    table = _hashing.tornado_new(seed, HashParams(2, 1, 8, 32), backend=backend).top_tables[1]
    words = philox4x32(
        (np.arange(256, dtype=np.uint64), 0, ROLE_TOP, 1), (seed & 0xFFFFFFFF, seed >> 32)
    )
    expected = (words[0] | (words[1] << np.uint64(32))) >> np.uint64(32)
    assert np.array_equal(table, expected)
    assert np.array_equal(table, fill_table(seed, ROLE_TOP, 0, 1, 256, 32))


def test_backends_agree(small_params):
    if "numba" not in BACKENDS:
        pytest.skip("numba is not installed")
    a = _hashing.tornado_new(7, small_params, backend="numpy")
    b = _hashing.tornado_new(7, small_params, backend="numba")
    for name in ("twist_tables", "derive_tables", "top_tables"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    keys = np.arange(1 << small_params.key_bits, dtype=np.uint64)
    assert np.array_equal(
        _hashing.tornado_hash(a, keys, backend="numpy"),
        _hashing.tornado_hash(b, keys, backend="numba"),
    )


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize(
    "params",
    [HashParams(2, 3, 4, 16), HashParams(3, 2, 8, 64), HashParams(1, 2, 8, 20)],
)
def test_tornado_hash(params, backend, rng):
    h = _hashing.tornado_new(11, params, backend=backend)
    keys = _random_keys(rng, params, 200)
    res = _hashing.tornado_hash(h, keys, backend=backend)
    assert res.dtype == np.uint64
    assert [int(v) for v in res] == [_reference_hash(h, k) for k in keys]

    derived = _hashing.tornado_derive(h, keys, backend=backend)
    assert derived.shape == (200, params.c + params.d)
    assert np.all(derived < params.sigma_size)
    assert [list(map(int, row)) for row in derived[:20]] == [
        _reference_derive(h, unpack_keys(k, params)) for k in keys[:20]
    ]

    # scalar in, scalar out
    assert int(_hashing.tornado_hash(h, int(keys[0]), backend=backend)) == int(res[0])
    if params.range_bits < 64:
        assert np.all(res >> np.uint64(params.range_bits) == 0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_split_identity(backend, profile_params, rng):
    h = _hashing.tornado_new(0xC0FFEE, profile_params, backend=backend)
    keys = rng.integers(0, 2**64, size=100_000, dtype=np.uint64, endpoint=False)
    hbar0, hbar1 = _hashing.tornado_split(h, keys, backend=backend)
    full = _hashing.tornado_hash(h, keys, backend=backend)
    assert np.array_equal(full, hbar0 ^ h.last_table[hbar1])
    assert np.array_equal(hbar1, _hashing.tornado_derive(h, keys, backend=backend)[:, -1])


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize(
    "params",
    [HashParams(2, 2, 4, 16), HashParams(3, 1, 4, 12), HashParams(1, 3, 4, 8)],
)
def test_split_identity_all_keys(params, backend):
    h = _hashing.tornado_new(0xBEEF, params, backend=backend)
    keys = np.arange(1 << params.key_bits, dtype=np.uint64)
    hbar0, hbar1 = _hashing.tornado_split(h, keys, backend=backend)
    assert np.array_equal(
        _hashing.tornado_hash(h, keys, backend=backend), hbar0 ^ h.last_table[hbar1]
    )


def test_split_needs_derived_characters():
    h = _hashing.tornado_new(1, HashParams(2, 0, 4, 8))
    with pytest.raises(UnsupportedError):
        _hashing.tornado_split(h, [1, 2, 3])


@pytest.mark.parametrize("params", [HashParams(2, 3, 4, 16), HashParams(4, 3, 16, 64)])
def test_combined_tables(params, rng):
    h = _hashing.tornado_new(5, params)
    keys = _random_keys(rng, params, 100)
    assert np.array_equal(
        _hashing.tornado_hash_combined(h, keys), _hashing.tornado_hash(h, keys)
    )


@pytest.mark.parametrize("backend", BACKENDS)
def test_simple_tabulation(backend, rng):
    params = HashParams(4, 0, 8, 32)
    h = _hashing.simple_tab_new(3, params, backend=backend)
    keys = _random_keys(rng, params)
    chars = unpack_keys(keys, params)
    expected = np.zeros(N, dtype=np.uint64)
    for j in range(params.c):
        expected ^= h.tables[j][chars[:, j]]
    assert np.array_equal(_hashing.simple_tab_hash(h, keys, backend=backend), expected)

    # simple tabulation is linear: four keys forming a rectangle hash to zero
    a, b = keys[0], keys[1]
    mask0 = np.uint64(0xFF)
    corners = [a, (a & ~mask0) | (b & mask0), (b & ~mask0) | (a & mask0), b]
    values = _hashing.simple_tab_hash(h, np.array(corners, dtype=np.uint64), backend=backend)
    assert int(np.bitwise_xor.reduce(values)) == 0


def test_oracle():
    params = HashParams(4, 0, 16, 64)
    o = _hashing.oracle_new(9, params)
    keys = np.arange(N, dtype=np.uint64)
    values = _hashing.oracle_hash(o, keys)
    assert np.array_equal(values, _hashing.oracle_hash(o, keys))
    assert int(_hashing.oracle_hash(o, 17)) == int(values[17])
    assert 17 in o.memo
    assert np.unique(values).size == N

    other = _hashing.oracle_hash(_hashing.oracle_new(10, params), keys)
    assert not np.array_equal(values, other)


def test_oracle_uniformity():
    o = _hashing.oracle_new(9, HashParams(4, 0, 16, 8))
    values = _hashing.oracle_hash(o, np.arange(100_000, dtype=np.uint64))
    counts = np.bincount(values.astype(np.int64), minlength=256)
    assert st.chisquare(counts).pvalue > ALPHA


def test_oracle_memo_frozen():
    params = HashParams(4, 0, 16, 64)
    expected = {
        1: {17: 0xD801B80593C4ACAD, 0x1FFFFFFFF: 0x90DA3B3E9F40F11D},
        2: {17: 0xA8A058950E085AD6, 0x1FFFFFFFF: 0x7F8F0557F76BFFDC},
    }
    for seed, memo in expected.items():
        o = _hashing.oracle_new(seed, params)
        for key in memo:
            _hashing.oracle_hash(o, key)
        assert o.memo == memo


def test_hash_keys_dispatch(small_params):
    keys = np.arange(50, dtype=np.uint64)
    h = _hashing.tornado_new(2, small_params)
    assert np.array_equal(_hashing.hash_keys(h, keys), _hashing.tornado_hash(h, keys))
    o = _hashing.oracle_new(2, small_params)
    assert np.array_equal(_hashing.hash_keys(o, keys), _hashing.oracle_hash(o, keys))


def test_uniformity_over_keys():
    params = HashParams(4, 3, 16, 64)
    h = _hashing.tornado_new(2024, params)
    keys = np.arange(1 << 16, dtype=np.uint64)
    buckets = (_hashing.tornado_hash(h, keys) >> np.uint64(56)).astype(np.int64)
    counts = np.bincount(buckets, minlength=256)
    assert st.chisquare(counts).pvalue > ALPHA


def test_uniformity_over_seeds():
    params = HashParams(2, 1, 4, 4)
    key = np.array([0x5A], dtype=np.uint64)
    values = [
        int(_hashing.tornado_hash(_hashing.tornado_new(seed, params), key)[0])
        for seed in range(10_000)
    ]
    counts = np.bincount(values, minlength=16)
    assert st.chisquare(counts).pvalue > ALPHA


@pytest.mark.parametrize("scheme", ["simple", "tornado"])
def test_pairwise_uniformity_over_seeds(scheme):
    # the keys differ in their first character only
    keys = pack_keys(np.array([[1, 2], [3, 2]]), HashParams(2, 0, 2, 2))
    if scheme == "simple":
        params = HashParams(2, 0, 2, 2)
        new, hash_ = _hashing.simple_tab_new, _hashing.simple_tab_hash
    else:
        params = HashParams(2, 1, 2, 2)
        new, hash_ = _hashing.tornado_new, _hashing.tornado_hash
    cells = []
    for seed in range(10_000):
        a, b = hash_(new(seed, params), keys).tolist()
        cells.append(4 * a + b)
    counts = np.bincount(cells, minlength=16)
    assert st.chisquare(counts).pvalue > ALPHA


def test_deterministic_and_fingerprint(small_params):
    a = _hashing.tornado_new(123, small_params)
    b = _hashing.tornado_new(123, small_params)
    c = _hashing.tornado_new(124, small_params)
    assert np.array_equal(a.top_tables, b.top_tables)
    assert not np.array_equal(a.top_tables, c.top_tables)
    assert hasher_fingerprint(a) == hasher_fingerprint(b)
    assert hasher_fingerprint(a) != hasher_fingerprint(c)
    assert hasher_fingerprint(a) != hasher_fingerprint(_hashing.oracle_new(123, small_params))
    with pytest.raises(ValueError):
        a.top_tables[0, 0] = 1


def test_golden(tmp_path, small_params):
    h = _hashing.tornado_new(99, small_params)
    keys = np.arange(1 << small_params.key_bits, dtype=np.uint64)
    path = (OUT_DIR or tmp_path) / "tornado_golden.txt"
    write_golden(path, h, keys)
    read_keys, read_hashes = read_golden(path)
    assert np.array_equal(read_keys, keys)
    assert np.array_equal(read_hashes, _hashing.tornado_hash(h, keys))
    assert path.read_text().splitlines()[1] == f"01 {int(read_hashes[1]):04x}"

    bad = tmp_path / "bad.txt"
    bad.write_text("01 02 03\n")
    with pytest.raises(InputError):
        read_golden(bad)


@pytest.mark.parametrize("backend", BACKENDS)
def test_golden_vector(backend):
    h = _hashing.tornado_new(GOLDEN_SEED, GOLDEN_PARAMS, backend=backend)
    derived = _hashing.tornado_derive(h, GOLDEN_KEY, backend=backend)
    assert derived.tolist() == GOLDEN_DERIVED

    path = DATA_DIR / "tornado_golden.txt"
    keys, hashes = read_golden(path)
    assert GOLDEN_KEY in keys.tolist()
    assert np.array_equal(_hashing.tornado_hash(h, keys, backend=backend), hashes)
    assert np.array_equal(_hashing.tornado_hash_combined(h, keys), hashes)
    frozen = [line for line in path.read_text().splitlines() if not line.startswith("#")]
    assert format_golden(h, keys, backend=backend).splitlines() == frozen


def test_seeds_give_different_tables():
    params = HashParams(2, 1, 8, 32)
    one = _hashing.tornado_new(1, params)
    two = _hashing.tornado_new(2, params)
    assert one.top_tables[0][:2].tolist() == [0x8CEDC5D3, 0xDB04B052]
    assert two.top_tables[0][:2].tolist() == [0x145066A6, 0xCAADD3EA]
    assert not np.array_equal(one.top_tables, two.top_tables)


def test_pack_keys(small_params):
    chars = np.array([[1, 2], [15, 0], [0, 15]])
    keys = pack_keys(chars, small_params)
    assert keys.tolist() == [0x21, 0x0F, 0xF0]
    assert np.array_equal(unpack_keys(keys, small_params), chars)
    with pytest.raises(InputError):
        pack_keys(np.array([[16, 0]]), small_params)
    with pytest.raises(InputError):
        _hashing.tornado_hash(_hashing.tornado_new(0, small_params), 1 << 8)


def test_params():
    assert HashParams(4, 3, 16, 64).table_entries() == (3 + 3 * 6 + 7) * 65536
    with pytest.raises(ParameterError):
        HashParams(5, 0, 16, 64)
    with pytest.raises(ParameterError):
        HashParams(2, -1, 8, 64)
    with pytest.raises(ParameterError):
        HashParams(2, 1, 8, 65)
    with pytest.raises(ParameterError):
        _hashing.tornado_new(-1, HashParams(2, 1, 8, 64))


@pytest.mark.parametrize(
    "fields",
    [
        dict(c=True),
        dict(c=2, d=False),
        dict(c=2, char_bits=True),
        dict(c=2, range_bits=True),
        dict(c=2.0),
    ],
)
def test_params_need_integers(fields):
    with pytest.raises(ParameterError, match="must be an integer"):
        HashParams(**fields)


def test_decimal_backend_does_not_hash(small_params):
    with pytest.raises(UnsupportedError):
        _hashing.tornado_new(0, small_params, backend="decimal")
