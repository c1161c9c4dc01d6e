"""Seeded counter-based random generators."""

from __future__ import annotations

import numpy as np


def make_rng(seed: int | np.random.SeedSequence | None = None) -> np.random.Generator:
    """Philox-backed generator; the same seed always yields the same stream."""
    return np.random.Generator(np.random.Philox(seed))


def derive_seed(*parts: int) -> int:
    """Mix several integers into one 64-bit seed (order-sensitive)."""
    ss = np.random.SeedSequence([int(p) & 0xFFFFFFFF for p in parts])
    return int(ss.generate_state(1, dtype=np.uint64)[0])
