"""Seeded random streams.

All randomness goes through :class:`random.Random` (MT19937), whose integer
seeding, ``randrange``, ``sample`` and ``shuffle`` are stable across
platforms. Independent substreams are keyed by hashing the seed together with
a tuple of counters, so trial ``k`` can be regenerated without replaying
trials ``0..k-1``.
"""

from __future__ import annotations

import hashlib
import random

SEED_MASK = (1 << 64) - 1


def make_rng(seed: int, *keys: int) -> random.Random:
    if not keys:
        return random.Random(seed & SEED_MASK)
    material = b"".join(int(k & SEED_MASK).to_bytes(8, "little") for k in (seed, *keys))
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:8], "little"))
