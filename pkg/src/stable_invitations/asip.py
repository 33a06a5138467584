"""Maximum stable invitations for anonymous preferences.

The descent over target sizes follows the classic greedy: for each size k
from n down to 1 collect everyone who accepts k, drop people who would not
mind being left out until k remain, and accept if nobody left outside wants
in at size k+1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GsipInstance, InstanceError, SolveResult


def solve_asip(instance: GsipInstance) -> SolveResult:
    """Maximum stable invitation of an anonymous instance, or no-stable verdict.

    Among removable agents the lowest-indexed go first, so the kept ones are
    the highest-indexed. Runs in O(n^2) on the acceptability table.
    """
    if not instance.is_asip:
        raise InstanceError("solve_asip needs empty acceptance and rejection sets; use solve_gsip")
    n = instance.n
    # outcome-major so each size is a contiguous row
    acc = np.ascontiguousarray(instance.acceptable.T)
    tried = []
    for k in range(n, 0, -1):
        tried.append(k)
        willing = acc[k]
        if int(np.count_nonzero(willing)) < k:
            continue
        wants_more = acc[k + 1]
        must_stay = willing & wants_more
        n_stay = int(np.count_nonzero(must_stay))
        if n_stay > k:
            continue
        if (wants_more & ~willing).any():
            continue
        removable = np.flatnonzero(willing & ~wants_more)
        keep = removable[len(removable) - (k - n_stay):]
        members = np.concatenate([np.flatnonzero(must_stay), keep])
        return SolveResult(frozenset(int(i) for i in members), nodes=len(tried), sizes_tried=tuple(tried), path="asip")
    tried.append(0)
    if n == 0 or not acc[1].any():
        return SolveResult(frozenset(), nodes=len(tried), sizes_tried=tuple(tried), path="asip")
    return SolveResult(None, nodes=len(tried), sizes_tried=tuple(tried), path="asip")


@dataclass(frozen=True, eq=False)
class MultiSlotInstance:
    """Anonymous agents ranking (time slot, size) pairs against staying home.

    ``ranks[i]`` has ``m*n + 1`` entries: index 0 is the outside option and
    index ``1 + t*n + (x-1)`` is size ``x`` in slot ``t`` (``t`` 0-based).
    """

    n: int
    m: int
    ranks: np.ndarray

    def __post_init__(self):
        ranks = np.asarray(self.ranks)
        if self.m < 1:
            raise InstanceError("need at least one time slot")
        if ranks.size == 0:
            ranks = np.zeros((self.n, self.m * self.n + 1), dtype=np.int64)
        if ranks.shape != (self.n, self.m * self.n + 1):
            raise InstanceError(f"ranks must have shape ({self.n}, {self.m * self.n + 1}), got {ranks.shape}")
        ties = ranks[:, 1:] == ranks[:, :1]
        if ties.any():
            agent, j = map(int, np.argwhere(ties)[0])
            slot, x = divmod(j, self.n)
            raise InstanceError(f"agent {agent}: (slot {slot}, size {x + 1}) ties the outside option 0")
        ranks = ranks.copy()
        ranks.setflags(write=False)
        object.__setattr__(self, "ranks", ranks)

    def __eq__(self, other):
        if not isinstance(other, MultiSlotInstance):
            return NotImplemented
        return self.n == other.n and self.m == other.m and np.array_equal(self.ranks, other.ranks)

    __hash__ = None

    @classmethod
    def from_slots(cls, slots: list[GsipInstance]) -> "MultiSlotInstance":
        """Glue per-slot anonymous instances that share the outside-option rank.

        Each slot's ranks are offset so slots never tie; within a slot the
        relative order against 0 is kept.
        """
        if not slots:
            raise InstanceError("need at least one time slot")
        n = slots[0].n
        cols = [np.zeros((n, 1), dtype=np.int64)]
        for s in slots:
            if s.n != n:
                raise InstanceError("all slots need the same agents")
            r = s.ranks.astype(np.int64)
            # better than 0 -> negative, worse -> positive
            cols.append(r[:, 1:] - r[:, :1])
        ranks = np.concatenate(cols, axis=1)
        ranks = ranks + int(np.abs(ranks).max(initial=0))
        return cls(n, len(slots), ranks)

    def slot(self, t: int) -> GsipInstance:
        """Anonymous instance seen when the event is fixed to slot ``t``."""
        if not 0 <= t < self.m:
            raise IndexError(f"slot {t} out of range for m={self.m}")
        cols = [0] + list(range(1 + t * self.n, 1 + (t + 1) * self.n))
        return GsipInstance(self.ranks[:, cols])


def solve_asip_multislot(instance: MultiSlotInstance) -> tuple[int, SolveResult]:
    """Best slot and its maximum stable invitation; earliest slot wins ties.

    If no slot admits a stable invitation the verdict is no-stable at slot 0.
    """
    best_slot, best = 0, None
    for t in range(instance.m):
        res = solve_asip(instance.slot(t))
        if res.stable and (best is None or not best.stable or res.size > best.size):
            best_slot, best = t, res
        elif best is None:
            best = res
    return best_slot, best
