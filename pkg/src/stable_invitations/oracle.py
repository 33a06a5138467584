"""Ground truth by checking every subset of agents.

Subsets are bitmasks with agent 0 as the least significant bit and are
scanned in increasing integer order. The whole table is evaluated at once
with numpy, straight from the definitions.
"""

from __future__ import annotations

import numpy as np

from .core import CapacityError, GsipInstance, SolveResult

DEFAULT_ORACLE_CAP = 20


def _members(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _tables(instance: GsipInstance, cap: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-subset boolean arrays (individually rational, envy-free) and sizes."""
    n = instance.n
    if n > cap:
        raise CapacityError(f"oracle enumeration capped at n={cap}, got n={n}")
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks).astype(np.int64)
    acc = instance.acceptable
    ir = np.ones(masks.shape, dtype=bool)
    ef = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        member = (masks >> i & 1).astype(bool)
        fm, rm = instance.accept_masks[i], instance.reject_masks[i]
        ok_sets = ((masks & fm) == fm) & ((masks & rm) == 0)
        ir &= ~member | (ok_sets & acc[i, sizes])
        # outsider i at size |S|+1; F_i and R_i never contain i
        ef &= member | ~(ok_sets & acc[i, sizes + 1])
    return ir, ef, sizes


def stable_mask_table(instance: GsipInstance, cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    """Boolean array indexed by subset bitmask: True where the subset is stable."""
    ir, ef, _ = _tables(instance, cap)
    return ir & ef


def enumerate_stable(instance: GsipInstance, cap: int = DEFAULT_ORACLE_CAP) -> list[frozenset]:
    return [_members(int(m)) for m in np.flatnonzero(stable_mask_table(instance, cap))]


def stable_sizes(instance: GsipInstance, cap: int = DEFAULT_ORACLE_CAP) -> set[int]:
    ir, ef, sizes = _tables(instance, cap)
    return set(int(s) for s in np.unique(sizes[ir & ef]))


def _max_of(ok: np.ndarray, sizes: np.ndarray, path: str) -> SolveResult:
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return SolveResult(None, nodes=ok.size, path=path)
    top = sizes[hits].max()
    # flatnonzero is ascending, so the first hit of maximum size is the least bitmask
    best = int(hits[sizes[hits] == top][0])
    return SolveResult(_members(best), nodes=ok.size, path=path)


def oracle_max_stable(instance: GsipInstance, cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    """Largest stable subset, least bitmask among ties."""
    ir, ef, sizes = _tables(instance, cap)
    return _max_of(ir & ef, sizes, "oracle")


def oracle_max_individually_rational(instance: GsipInstance, cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    ir, _, sizes = _tables(instance, cap)
    return _max_of(ir, sizes, "oracle")


def batch_max_stable_size(acceptable: np.ndarray) -> np.ndarray:
    """Largest stable size for a stack of anonymous instances, -1 where none exists.

    ``acceptable`` has shape ``(batch, n, n+2)`` laid out like
    ``GsipInstance.acceptable``. Every subset of every instance is checked.
    """
    batch, n = acceptable.shape[:2]
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks).astype(np.int64)
    stable = np.ones((batch, masks.size), dtype=bool)
    for i in range(n):
        member = (masks >> i & 1).astype(bool)
        stays = acceptable[:, i, sizes]
        joins = acceptable[:, i, sizes + 1]
        stable &= np.where(member, stays, ~joins)
    best = np.where(stable, sizes, -1)
    return best.max(axis=1)
