"""Threshold mechanism for increasing-preference agents.

Every agent reports a minimum acceptable size. The mechanism invites the
largest prefix of agents (sorted by threshold, then index) whose last
member is happy with the prefix size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    GsipInstance,
    PreferenceOrder,
    ShapeError,
    classify_preference,
    increasing_preference,
    is_increasing,
)


@dataclass(frozen=True)
class ThresholdProfile:
    """Reported (or true) minimum thresholds; ``n+1`` means never willing."""

    thresholds: tuple[int, ...]

    def __post_init__(self):
        ts = tuple(int(t) for t in self.thresholds)
        object.__setattr__(self, "thresholds", ts)
        n = len(ts)
        for i, t in enumerate(ts):
            if not 1 <= t <= n + 1:
                raise ValueError(f"agent {i}: threshold {t} outside 1..{n + 1}")

    @property
    def n(self) -> int:
        return len(self.thresholds)

    def replace(self, agent: int, threshold: int) -> "ThresholdProfile":
        ts = list(self.thresholds)
        ts[agent] = threshold
        return ThresholdProfile(tuple(ts))

    def instance(self) -> GsipInstance:
        """Anonymous instance with the canonical INC preference for each threshold."""
        return GsipInstance.from_prefs([increasing_preference(self.n, t) for t in self.thresholds])

    @classmethod
    def from_instance(cls, instance: GsipInstance) -> "ThresholdProfile":
        return cls(tuple(derive_threshold(p) for p in instance.prefs))


def derive_threshold(pref: PreferenceOrder) -> int:
    """Least acceptable size of an INC preference, ``n+1`` if nothing is acceptable."""
    accepted = pref.acceptable_sizes
    if not accepted:
        return pref.n + 1
    if not is_increasing(pref):
        raise ShapeError(f"{pref} is not an increasing preference ({classify_preference(pref).kind.value})")
    return accepted[0]


def run_inc_mechanism(profile: ThresholdProfile | Sequence[int]) -> frozenset:
    if not isinstance(profile, ThresholdProfile):
        profile = ThresholdProfile(tuple(profile))
    order = sorted(range(profile.n), key=lambda i: (profile.thresholds[i], i))
    for k in range(profile.n, 0, -1):
        if profile.thresholds[order[k - 1]] <= k:
            return frozenset(order[:k])
    return frozenset()
