"""Seed derivation and the trial pool."""
import itertools
import logging
import os
import typing as tp
import zlib
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from tornadotab.core.errors import ResourceError

if tp.TYPE_CHECKING:
    from .config import ExperimentConfig

logger = logging.getLogger(__name__)

T = tp.TypeVar("T")
Trial = tp.Callable[["ExperimentConfig", int], T]


def derive_seed(master_seed: int, kind: str, r: int) -> int:
    """Seed of trial ``r`` of experiment ``kind``.

    The first 64-bit word of ``SeedSequence(entropy=master_seed,
    spawn_key=(crc32(kind), r))``.
    """
    seq = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(zlib.crc32(kind.encode()), r)
    )
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def worker_count(config: "ExperimentConfig") -> int:
    """``workers=0`` uses one worker per CPU."""
    return config.workers if config.workers > 0 else os.cpu_count() or 1


def table_bytes(config: "ExperimentConfig") -> int:
    """Memory held by the lookup tables of the hash functions alive at once."""
    return config.params.table_entries() * 8 * worker_count(config)


def check_memory(config: "ExperimentConfig") -> None:
    need = table_bytes(config)
    if need > config.max_table_bytes:
        raise ResourceError(
            f"The lookup tables need {need} bytes, above the limit of "
            f"{config.max_table_bytes} bytes."
        )


def run_trials(
    trial: "Trial[T]", config: "ExperimentConfig", trials: int | None = None
) -> list[T]:
    """Results of ``trial(config, r)`` for ``r = 0..trials-1``, in trial order."""
    trials = config.trials if trials is None else trials
    workers = min(worker_count(config), trials)
    logger.info("Running %d %s trials on %d worker(s)", trials, config.kind, workers)
    if workers <= 1:
        return [trial(config, r) for r in range(trials)]
    chunksize = max(1, trials // (8 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            pool.map(trial, itertools.repeat(config), range(trials), chunksize=chunksize)
        )
