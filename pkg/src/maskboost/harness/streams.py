"""Named random streams.

Every random quantity in a run derives from (master_seed, *tags): the
tags are crc32-hashed into a SeedSequence entropy list, so streams are
independent, order-insensitive to grid execution, and reproducible from
the config alone. Floats used as tags are scaled to integer
milli-units first (0.4 -> 400).
"""
import zlib

import numpy as np


def _entropy(master_seed: int, tags) -> list[int]:
    ent = [int(master_seed) & 0xFFFFFFFFFFFFFFFF]
    for t in tags:
        if isinstance(t, str):
            ent.append(zlib.crc32(t.encode("utf-8")))
        elif isinstance(t, float):
            ent.append(int(round(t * 1000)) & 0xFFFFFFFF)
        else:
            ent.append(int(t) & 0xFFFFFFFFFFFFFFFF)
    return ent


def rng_for(master_seed: int, *tags) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(_entropy(master_seed, tags)))


def int_seed_for(master_seed: int, *tags) -> int:
    seq = np.random.SeedSequence(_entropy(master_seed, tags))
    return int(seq.generate_state(1, np.uint64)[0])
