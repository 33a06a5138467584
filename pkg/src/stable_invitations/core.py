"""Preferences, instances and the stability predicates.

Agents are indexed ``0..n-1`` everywhere in the library. Outcomes are the
attendance sizes ``1..n`` plus the outside option ``0``. A preference is a
dense rank vector over outcomes: lower rank is strictly better, equal ranks
are indifference.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Invitation = frozenset  # frozenset[int] of agent indices


class InstanceError(ValueError):
    """Raised when an instance or preference violates its invariants."""


class ShapeError(ValueError):
    """Raised when a preference does not have the shape an operation needs."""


class CapacityError(RuntimeError):
    """Raised when an exact search would exceed its configured size cap."""


# ---------------------------------------------------------------------------
# Preferences
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[>~])\s*")


@dataclass(frozen=True)
class PreferenceOrder:
    """Total preorder over outcomes ``0..n`` stored as ranks."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if len(ranks) < 1:
            raise InstanceError("a preference needs at least the outside option")
        if any(r < 0 for r in ranks):
            raise InstanceError("ranks must be non-negative")
        for x in range(1, len(ranks)):
            if ranks[x] == ranks[0]:
                raise InstanceError(f"outcome {x} ties the outside option 0")

    @property
    def n(self) -> int:
        return len(self.ranks) - 1

    @classmethod
    def parse(cls, text: str) -> "PreferenceOrder":
        """Read ``"1>0>2~3"`` style notation (``>`` strict, ``~`` tie)."""
        tokens = _TOKEN.findall(text)
        if "".join(tokens) != re.sub(r"\s+", "", text) or not tokens:
            raise InstanceError(f"cannot parse preference {text!r}")
        classes: list[list[int]] = [[]]
        expect_outcome = True
        for tok in tokens:
            if expect_outcome:
                if not tok.isdigit():
                    raise InstanceError(f"cannot parse preference {text!r}")
                classes[-1].append(int(tok))
            elif tok == ">":
                classes.append([])
            elif tok != "~":
                raise InstanceError(f"cannot parse preference {text!r}")
            expect_outcome = not expect_outcome
        if expect_outcome:
            raise InstanceError(f"dangling operator in {text!r}")
        seen = sorted(x for cls_ in classes for x in cls_)
        if seen != list(range(len(seen))):
            raise InstanceError(f"{text!r} must rank each of 0..n exactly once")
        ranks = [0] * len(seen)
        for r, members in enumerate(classes):
            for x in members:
                ranks[x] = r
        return cls(tuple(ranks))

    def __str__(self) -> str:
        groups: dict[int, list[int]] = {}
        for x, r in enumerate(self.ranks):
            groups.setdefault(r, []).append(x)
        return ">".join("~".join(map(str, groups[r])) for r in sorted(groups))

    def acceptable(self, x: int) -> bool:
        """True when outcome ``x`` is strictly preferred to staying home."""
        return 1 <= x <= self.n and self.ranks[x] < self.ranks[0]

    @property
    def acceptable_sizes(self) -> tuple[int, ...]:
        return tuple(x for x in range(1, self.n + 1) if self.ranks[x] < self.ranks[0])

    def is_simple(self) -> bool:
        return all(self.ranks[x] < self.ranks[0] for x in range(1, self.n + 1))


class ShapeKind(enum.Enum):
    SINGLE_PEAKED = "single_peaked"
    INCREASING = "increasing"
    DECREASING = "decreasing"
    GENERAL = "general"
    EMPTY = "empty"


@dataclass(frozen=True)
class PreferenceShape:
    kind: ShapeKind
    l: int
    h: int
    o: int


def classify_preference(pref: PreferenceOrder) -> PreferenceShape:
    """Classify the acceptable set of ``pref`` and locate its peak.

    ``l`` and ``h`` are the least and greatest acceptable sizes, ``o`` the
    ideal size (the smallest most-preferred acceptable size, so a plateau
    such as ``1~2>0`` peaks at 1). When both ends qualify, decreasing wins
    over increasing.
    """
    ranks, n = pref.ranks, pref.n
    accepted = pref.acceptable_sizes
    if not accepted:
        return PreferenceShape(ShapeKind.EMPTY, 0, 0, 0)
    l, h = accepted[0], accepted[-1]
    best = min(ranks[x] for x in accepted)
    o = next(x for x in accepted if ranks[x] == best)
    if len(accepted) != h - l + 1:
        return PreferenceShape(ShapeKind.GENERAL, l, h, o)
    rising = all(ranks[x] >= ranks[x + 1] for x in range(l, o))
    falling = all(ranks[x] >= ranks[x - 1] for x in range(o + 1, h + 1))
    if not (rising and falling):
        return PreferenceShape(ShapeKind.GENERAL, l, h, o)
    if l == 1 and o == 1:
        return PreferenceShape(ShapeKind.DECREASING, l, h, 1)
    if h == n and ranks[n] == best:
        return PreferenceShape(ShapeKind.INCREASING, l, h, n)
    return PreferenceShape(ShapeKind.SINGLE_PEAKED, l, h, o)


def _single_peaked(shape: PreferenceShape) -> bool:
    return shape.kind in (ShapeKind.SINGLE_PEAKED, ShapeKind.INCREASING, ShapeKind.DECREASING)


def is_increasing(pref: PreferenceOrder) -> bool:
    """Single-peaked with ``n`` among the ideal sizes (an INC preference)."""
    shape = classify_preference(pref)
    if not _single_peaked(shape) or shape.h != pref.n:
        return False
    return pref.ranks[pref.n] == min(pref.ranks[x] for x in pref.acceptable_sizes)


def is_decreasing(pref: PreferenceOrder) -> bool:
    """Single-peaked with 1 among the ideal sizes (a DEC preference)."""
    shape = classify_preference(pref)
    return _single_peaked(shape) and shape.l == 1 and shape.o == 1


def synthesize_preference(n: int, l: int, h: int, o: int) -> PreferenceOrder:
    """Canonical single-peaked preference: rank grows with distance from ``o``.

    ``l = h = o = 0`` yields the empty preference (nothing acceptable).
    """
    if (l, h, o) == (0, 0, 0):
        return PreferenceOrder((0,) + (1,) * n)
    if not 1 <= l <= o <= h <= n:
        raise ShapeError(f"need 1 <= l <= o <= h <= n, got l={l} o={o} h={h} n={n}")
    spread = max(o - l, h - o)
    home = spread + 1
    ranks = [home] + [abs(x - o) if l <= x <= h else home + 1 for x in range(1, n + 1)]
    return PreferenceOrder(tuple(ranks))


def increasing_preference(n: int, threshold: int) -> PreferenceOrder:
    """INC preference accepting exactly the sizes ``threshold..n``; ``n+1`` accepts none."""
    if not 1 <= threshold <= n + 1:
        raise ShapeError(f"threshold must lie in 1..{n + 1}, got {threshold}")
    if threshold == n + 1:
        return synthesize_preference(n, 0, 0, 0)
    return synthesize_preference(n, threshold, n, n)


def acceptance_preference(n: int, accepted: Iterable[int]) -> PreferenceOrder:
    """Two-class preference: every size in ``accepted`` tied above 0, the rest below."""
    accepted = set(accepted)
    return PreferenceOrder((1,) + tuple(0 if x in accepted else 2 for x in range(1, n + 1)))


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


def _mask(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class GsipInstance:
    """Agents with size preferences plus acceptance and rejection sets.

    ``ranks`` is an ``(n, n+1)`` integer matrix, one preference per row. An
    instance with all sets empty is an anonymous (ASIP) instance.
    """

    ranks: np.ndarray
    accept: tuple[frozenset, ...] = ()
    reject: tuple[frozenset, ...] = ()

    def __post_init__(self):
        ranks = np.asarray(self.ranks)
        if ranks.size == 0:
            ranks = np.zeros((0, 1), dtype=np.int64)
        if ranks.ndim != 2 or ranks.shape[1] != ranks.shape[0] + 1:
            raise InstanceError(f"ranks must have shape (n, n+1), got {ranks.shape}")
        if not np.issubdtype(ranks.dtype, np.integer):
            raise InstanceError("ranks must be integers")
        if (ranks < 0).any():
            raise InstanceError("ranks must be non-negative")
        ties = ranks[:, 1:] == ranks[:, :1]
        if ties.any():
            agent, x = map(int, np.argwhere(ties)[0])
            raise InstanceError(f"agent {agent}: outcome {x + 1} ties the outside option 0")
        ranks = ranks.copy()
        ranks.setflags(write=False)
        object.__setattr__(self, "ranks", ranks)
        n = ranks.shape[0]
        for name in ("accept", "reject"):
            sets = getattr(self, name)
            sets = tuple(frozenset(int(j) for j in s) for s in sets) if sets else (frozenset(),) * n
            if len(sets) != n:
                raise InstanceError(f"{name} needs one set per agent ({n}), got {len(sets)}")
            for i, s in enumerate(sets):
                if i in s:
                    raise InstanceError(f"agent {i}: {name} set contains the agent itself")
                if any(not 0 <= j < n for j in s):
                    raise InstanceError(f"agent {i}: {name} set has an unknown agent")
            object.__setattr__(self, name, sets)

    @classmethod
    def from_prefs(
        cls,
        prefs: Sequence[PreferenceOrder | str],
        accept: Sequence[Iterable[int]] | None = None,
        reject: Sequence[Iterable[int]] | None = None,
    ) -> "GsipInstance":
        prefs = [PreferenceOrder.parse(p) if isinstance(p, str) else p for p in prefs]
        n = len(prefs)
        for i, p in enumerate(prefs):
            if p.n != n:
                raise InstanceError(f"agent {i}: preference covers {p.n} sizes, expected {n}")
        ranks = np.array([p.ranks for p in prefs], dtype=np.int64).reshape(n, n + 1)
        return cls(
            ranks,
            tuple(frozenset(s) for s in accept) if accept is not None else (),
            tuple(frozenset(s) for s in reject) if reject is not None else (),
        )

    def __eq__(self, other):
        if not isinstance(other, GsipInstance):
            return NotImplemented
        return (
            np.array_equal(self.ranks, other.ranks)
            and self.accept == other.accept
            and self.reject == other.reject
        )

    __hash__ = None

    def __repr__(self):
        prefs = ", ".join(str(self.pref(i)) for i in range(self.n))
        return f"GsipInstance(n={self.n}, prefs=[{prefs}], accept={self.accept}, reject={self.reject})"

    @property
    def n(self) -> int:
        return self.ranks.shape[0]

    @property
    def alpha(self) -> int:
        return max((len(s) for s in self.accept), default=0)

    @property
    def beta(self) -> int:
        return max((len(s) for s in self.reject), default=0)

    @property
    def is_asip(self) -> bool:
        return self.alpha == 0 and self.beta == 0

    def pref(self, agent: int) -> PreferenceOrder:
        return PreferenceOrder(tuple(int(r) for r in self.ranks[agent]))

    @property
    def prefs(self) -> tuple[PreferenceOrder, ...]:
        return tuple(self.pref(i) for i in range(self.n))

    def all_simple(self) -> bool:
        return bool(self.acceptable[:, 1 : self.n + 1].all())

    @cached_property
    def acceptable(self) -> np.ndarray:
        """Boolean ``(n, n+2)`` matrix: ``[i, x]`` is True iff size x beats staying home.

        Column 0 and the padding column ``n+1`` are always False.
        """
        acc = np.zeros((self.n, self.n + 2), dtype=bool)
        acc[:, : self.n + 1] = self.ranks < self.ranks[:, :1]
        acc.setflags(write=False)
        return acc

    @cached_property
    def accept_masks(self) -> tuple[int, ...]:
        return tuple(_mask(s) for s in self.accept)

    @cached_property
    def reject_masks(self) -> tuple[int, ...]:
        return tuple(_mask(s) for s in self.reject)

    def with_agent(self, agent: int, *, pref=None, accept=None, reject=None) -> "GsipInstance":
        """Copy with one agent's report replaced."""
        ranks = np.array(self.ranks)
        if pref is not None:
            if isinstance(pref, str):
                pref = PreferenceOrder.parse(pref)
            ranks = ranks.astype(np.int64)
            ranks[agent] = pref.ranks
        acc = list(self.accept)
        rej = list(self.reject)
        if accept is not None:
            acc[agent] = frozenset(accept)
        if reject is not None:
            rej[agent] = frozenset(reject)
        return GsipInstance(ranks, tuple(acc), tuple(rej))


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver: an invitation, or ``None`` for "no stable invitation"."""

    invitation: frozenset | None
    nodes: int = 0
    sizes_tried: tuple[int, ...] = ()
    path: str = ""

    @property
    def stable(self) -> bool:
        return self.invitation is not None

    @property
    def size(self) -> int | None:
        return None if self.invitation is None else len(self.invitation)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


class Comparison(enum.Enum):
    PREFERS_S = "prefers_S"
    PREFERS_T = "prefers_T"
    INDIFFERENT = "indifferent"


def _check_subset(instance: GsipInstance, S) -> frozenset:
    S = frozenset(S)
    if any(not 0 <= i < instance.n for i in S):
        raise InstanceError(f"invitation {sorted(S)} names agents outside 0..{instance.n - 1}")
    return S


def compare_under(pref: PreferenceOrder, agent: int, S, T) -> Comparison:
    """Compare invitations by the size the agent would attend (0 when uninvited)."""
    value_s = pref.ranks[len(S)] if agent in S else pref.ranks[0]
    value_t = pref.ranks[len(T)] if agent in T else pref.ranks[0]
    if value_s < value_t:
        return Comparison.PREFERS_S
    if value_t < value_s:
        return Comparison.PREFERS_T
    return Comparison.INDIFFERENT


def compare_for_agent(instance: GsipInstance, agent: int, S, T) -> Comparison:
    if not 0 <= agent < instance.n:
        raise IndexError(f"agent {agent} out of range for n={instance.n}")
    S, T = _check_subset(instance, S), _check_subset(instance, T)
    return compare_under(instance.pref(agent), agent, S, T)


def _would_attend(instance: GsipInstance, i: int, mask: int, size: int) -> bool:
    # F_i inside, R_i outside, and the size beats staying home.
    fm = instance.accept_masks[i]
    return (
        mask & fm == fm
        and not mask & instance.reject_masks[i]
        and bool(instance.acceptable[i, size])
    )


def is_individually_rational(instance: GsipInstance, S) -> bool:
    S = _check_subset(instance, S)
    mask, size = _mask(S), len(S)
    return all(_would_attend(instance, i, mask, size) for i in S)


def is_envy_free(instance: GsipInstance, S) -> bool:
    S = _check_subset(instance, S)
    mask, size = _mask(S), len(S)
    return not any(
        _would_attend(instance, j, mask | (1 << j), size + 1)
        for j in range(instance.n)
        if j not in S
    )


def is_stable(instance: GsipInstance, S) -> bool:
    return is_individually_rational(instance, S) and is_envy_free(instance, S)
