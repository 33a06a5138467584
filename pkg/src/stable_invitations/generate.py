"""Seeded random instances drawn from the preference families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GsipInstance

FAMILIES = ("simple", "interval_single_peaked", "inc", "dec", "arbitrary_preorder")


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    preference_family: str = "arbitrary_preorder"
    alpha_max: int = 0
    beta_max: int = 0
    seed: int = 0
    exact_bounds: bool = False  # force some agent to hit alpha_max / beta_max

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.preference_family not in FAMILIES:
            raise ValueError(f"unknown family {self.preference_family!r}; choose from {FAMILIES}")
        top = max(self.n - 1, 0)
        for name in ("alpha_max", "beta_max"):
            v = getattr(self, name)
            if not 0 <= v <= top:
                raise ValueError(f"{name}={v} must lie in 0..{top} for n={self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _dense(values: np.ndarray) -> np.ndarray:
    return np.unique(values, return_inverse=True)[1].astype(np.int64)


def _away_steps(rng, length: int) -> np.ndarray:
    # ranks that weakly grow moving away from the peak
    return np.cumsum(rng.integers(0, 2, size=length))


def _shaped_row(rng, n: int, lo: int, hi: int, peak: int) -> np.ndarray:
    """Row accepting exactly ``lo..hi``, weakly unimodal around ``peak``; lo=0 accepts none."""
    row = np.zeros(n + 1, dtype=np.int64)
    if lo == 0:
        row[1:] = 1 + rng.integers(0, max(n, 1), size=n)
        return _dense(row)
    row[peak] = 0
    row[lo:peak] = _away_steps(rng, peak - lo)[::-1]
    row[peak + 1 : hi + 1] = _away_steps(rng, hi - peak)
    home = int(row[lo : hi + 1].max()) + 1
    row[0] = home
    outside = [x for x in range(1, n + 1) if not lo <= x <= hi]
    row[outside] = home + 1 + rng.integers(0, max(n, 1), size=len(outside))
    return _dense(row)


def _row(rng, n: int, family: str) -> np.ndarray:
    if family == "simple":
        row = np.empty(n + 1, dtype=np.int64)
        row[1:] = rng.integers(0, max(n, 1), size=n)
        row[0] = n
        return _dense(row)
    if family == "arbitrary_preorder":
        row = np.empty(n + 1, dtype=np.int64)
        row[1:] = 2 * rng.integers(0, n + 1, size=n)
        row[0] = 2 * int(rng.integers(0, n + 1)) + 1
        return _dense(row)
    if family == "interval_single_peaked":
        if rng.integers(0, n + 1) == 0:
            return _shaped_row(rng, n, 0, 0, 0)
        lo, hi = sorted(int(v) for v in rng.integers(1, n + 1, size=2))
        return _shaped_row(rng, n, lo, hi, int(rng.integers(lo, hi + 1)))
    if family == "inc":
        lo = int(rng.integers(1, n + 2))
        if lo == n + 1:
            return _shaped_row(rng, n, 0, 0, 0)
        row = np.empty(n + 1, dtype=np.int64)
        row[1:] = 2 * n + 1 + rng.integers(0, n, size=n)
        row[lo:] = np.arange(n - lo, -1, -1)  # strictly better towards n
        row[0] = n - lo + 1
        return _dense(row)
    if family == "dec":
        hi = int(rng.integers(0, n + 1))
        return _shaped_row(rng, n, 1 if hi else 0, hi, 1 if hi else 0)
    raise ValueError(family)


def _pick_sets(rng, n: int, bound: int, exact: bool) -> list[frozenset]:
    sets = []
    forced = int(rng.integers(0, n)) if exact and n and bound else -1
    for i in range(n):
        others = [j for j in range(n) if j != i]
        k = bound if i == forced else int(rng.integers(0, bound + 1))
        sets.append(frozenset(int(j) for j in rng.choice(others, size=k, replace=False)) if k else frozenset())
    return sets


def generate_random_instance(config: GeneratorConfig) -> GsipInstance:
    rng = np.random.default_rng(config.seed)
    n = config.n
    ranks = np.array([_row(rng, n, config.preference_family) for _ in range(n)], dtype=np.int64).reshape(n, n + 1)
    accept = _pick_sets(rng, n, config.alpha_max, config.exact_bounds)
    reject = _pick_sets(rng, n, config.beta_max, config.exact_bounds)
    return GsipInstance(ranks, tuple(accept), tuple(reject))


def random_rank_matrix(n: int, family: str, seed: int) -> np.ndarray:
    """Vectorised ``(n, n+1)`` rank matrix for large anonymous benchmarks.

    Supports ``arbitrary_preorder`` and ``simple``; uses compact integer types.
    """
    rng = np.random.default_rng(seed)
    dtype = np.int16 if 2 * n + 2 < np.iinfo(np.int16).max else np.int32
    ranks = np.empty((n, n + 1), dtype=dtype)
    if family == "arbitrary_preorder":
        ranks[:, 1:] = 2 * rng.integers(0, n + 1, size=(n, n), dtype=dtype)
        ranks[:, 0] = 2 * rng.integers(0, n + 1, size=n, dtype=dtype) + 1
    elif family == "simple":
        ranks[:, 1:] = rng.integers(0, n, size=(n, n), dtype=dtype)
        ranks[:, 0] = n
    else:
        raise ValueError(f"family {family!r} not supported for rank matrices")
    return ranks
