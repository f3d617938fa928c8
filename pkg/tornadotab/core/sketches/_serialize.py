"""Binary and JSON forms of the sketches.

Binary layout, little endian: the header ``magic, version, type, k,
fingerprint`` (``<4sBBIQ``), the hash parameters ``c, d, char_bits,
range_bits`` (``<BBBB``) and then the entries of the sketch type.
"""
import json
import struct
import typing as tp

import numpy as np

from tornadotab.core.errors import InputError, ParameterError
from tornadotab.core.hashing import HashParams

from ._bottomk import BottomKSketch
from ._kpm import KPartitionMinSketch
from ._vectork import VectorKSample

MAGIC = b"TTSK"
VERSION = 1
HEADER = struct.Struct("<4sBBIQ")
PARAMS = struct.Struct("<BBBB")
COUNT = struct.Struct("<I")
MAX_K = (1 << 32) - 1

Sketch = BottomKSketch | KPartitionMinSketch | VectorKSample

TYPE_CODES: dict[type, int] = {
    BottomKSketch: 1,
    KPartitionMinSketch: 2,
    VectorKSample: 3,
}
TYPE_NAMES = {BottomKSketch: "bottom-k", KPartitionMinSketch: "kpm", VectorKSample: "vector-k"}


def _u64(arr: np.ndarray) -> bytes:
    return np.asarray(arr, dtype="<u8").tobytes()


def dumps(sketch: Sketch) -> bytes:
    try:
        code = TYPE_CODES[type(sketch)]
    except KeyError as err:
        raise InputError(f"Cannot serialize {type(sketch).__name__}.") from err
    if not 1 <= sketch.k <= MAX_K:
        raise ParameterError(f"k={sketch.k} does not fit the 32-bit k field of the format.")
    p = sketch.params
    parts = [
        HEADER.pack(MAGIC, VERSION, code, sketch.k, sketch.fingerprint),
        PARAMS.pack(p.c, p.d, p.char_bits, p.range_bits),
    ]
    if isinstance(sketch, BottomKSketch):
        parts += [COUNT.pack(sketch.hashes.shape[0]), _u64(sketch.hashes), _u64(sketch.keys)]
    elif isinstance(sketch, KPartitionMinSketch):
        parts.append(sketch.registers.astype(np.int8).tobytes())
    else:
        parts += [
            COUNT.pack(sketch.fill),
            _u64(sketch.hashes),
            _u64(sketch.keys),
            sketch.occupied.astype(np.uint8).tobytes(),
        ]
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise InputError("Truncated sketch data.")
        chunk = self.data[self.pos : self.pos + size]
        self.pos += size
        return chunk

    def unpack(self, fmt: struct.Struct) -> tuple:
        return fmt.unpack(self.take(fmt.size))

    def array(self, dtype: str, count: int) -> np.ndarray:
        size = np.dtype(dtype).itemsize * count
        return np.frombuffer(self.take(size), dtype=dtype).copy()


def loads(data: bytes) -> Sketch:
    reader = _Reader(bytes(data))
    magic, version, code, k, fp = reader.unpack(HEADER)
    if magic != MAGIC:
        raise InputError("Not a sketch: bad magic bytes.")
    if version != VERSION:
        raise InputError(f"Unsupported sketch format version {version}.")
    try:
        params = HashParams(*reader.unpack(PARAMS))
    except ValueError as err:
        raise InputError(f"Invalid hash parameters in sketch: {err}") from err
    if code == 1:
        (count,) = reader.unpack(COUNT)
        hashes = reader.array("<u8", count).astype(np.uint64)
        keys = reader.array("<u8", count).astype(np.uint64)
        sketch: Sketch = BottomKSketch(k, hashes, keys, params, fp)
    elif code == 2:
        registers = reader.array("i1", k).astype(np.int8)
        sketch = KPartitionMinSketch(k, registers, params, fp)
    elif code == 3:
        (fill,) = reader.unpack(COUNT)
        hashes = reader.array("<u8", k).astype(np.uint64)
        keys = reader.array("<u8", k).astype(np.uint64)
        occupied = reader.array("u1", k).astype(bool)
        sketch = VectorKSample(k, fill, hashes, keys, occupied, params, fp)
    else:
        raise InputError(f"Unknown sketch type code {code}.")
    if reader.pos != len(reader.data):
        raise InputError("Trailing bytes after the sketch.")
    return sketch


def to_dict(sketch: Sketch) -> dict[str, tp.Any]:
    p = sketch.params
    out: dict[str, tp.Any] = {
        "type": TYPE_NAMES[type(sketch)],
        "version": VERSION,
        "k": sketch.k,
        "fingerprint": f"{sketch.fingerprint:016x}",
        "params": {"c": p.c, "d": p.d, "char_bits": p.char_bits, "range_bits": p.range_bits},
    }
    if isinstance(sketch, BottomKSketch):
        out["entries"] = [[h, k] for h, k in sketch.entries]
        out["threshold"] = sketch.threshold
    elif isinstance(sketch, KPartitionMinSketch):
        out["registers"] = sketch.registers.tolist()
    else:
        out["fill"] = sketch.fill
        out["holes"] = sketch.holes
        out["min_keys"] = [
            [int(h), int(k)] if occ else None
            for h, k, occ in zip(sketch.hashes, sketch.keys, sketch.occupied)
        ]
    return out


def to_json(sketch: Sketch) -> str:
    return json.dumps(to_dict(sketch), indent=2)
