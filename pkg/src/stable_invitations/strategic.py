"""Auditing mechanisms: strategy-proofness, stability, manipulation search.

A mechanism here is a finite table: each agent picks one action from a
finite list and every action profile maps to an invitation. Actions are
either size preferences (anonymous audits) or declared acceptance and
rejection sets on top of fixed size preferences (general audits). Every
action is also a candidate truth when checking strategy-proofness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .asip import solve_asip
from .core import (
    CapacityError,
    Comparison,
    GsipInstance,
    PreferenceOrder,
    acceptance_preference,
    compare_under,
    increasing_preference,
)
from .gsip import solve_gsip
from .mechanism import ThresholdProfile, run_inc_mechanism
from .oracle import stable_mask_table

DEFAULT_BRUTE_FORCE_CAP = 12
DEFAULT_FR_CAP = 100_000
DEFAULT_TABLE_CAP = 1 << 24


class TableError(ValueError):
    """Raised when a mechanism table does not cover every action profile."""


@dataclass(frozen=True)
class Declaration:
    """Declared acceptance and rejection sets (agent indices)."""

    accept: frozenset = frozenset()
    reject: frozenset = frozenset()

    def __str__(self):
        f = ",".join(f"a{j + 1}" for j in sorted(self.accept))
        r = ",".join(f"a{j + 1}" for j in sorted(self.reject))
        return f"F={{{f}}} R={{{r}}}"


Action = PreferenceOrder | Declaration


@dataclass(frozen=True)
class ActionSpace:
    """Per-agent action lists; ``base`` supplies size preferences for declarations."""

    action_sets: tuple[tuple[Action, ...], ...]
    base: GsipInstance | None = None

    def __post_init__(self):
        sets = tuple(tuple(a) for a in self.action_sets)
        object.__setattr__(self, "action_sets", sets)
        if any(not a for a in sets):
            raise ValueError("every agent needs at least one action")
        if any(isinstance(a, Declaration) for acts in sets for a in acts) and self.base is None:
            raise ValueError("declaration actions need a base instance for size preferences")

    @property
    def n(self) -> int:
        return len(self.action_sets)

    def profiles(self):
        return itertools.product(*(range(len(a)) for a in self.action_sets))

    @property
    def n_profiles(self) -> int:
        return int(np.prod([len(a) for a in self.action_sets]))

    def actions(self, profile: Sequence[int]) -> tuple[Action, ...]:
        return tuple(self.action_sets[i][a] for i, a in enumerate(profile))

    def instance(self, profile: Sequence[int]) -> GsipInstance:
        acts = self.actions(profile)
        if self.base is None:
            return GsipInstance.from_prefs(acts)
        ranks = np.array(self.base.ranks)
        accept, reject = list(self.base.accept), list(self.base.reject)
        for i, a in enumerate(acts):
            if isinstance(a, Declaration):
                accept[i], reject[i] = a.accept, a.reject
            else:
                ranks[i] = a.ranks
        return GsipInstance(ranks, tuple(accept), tuple(reject))

    def true_pref(self, agent: int, action: int) -> PreferenceOrder:
        a = self.action_sets[agent][action]
        return a if isinstance(a, PreferenceOrder) else self.base.pref(agent)


@dataclass(frozen=True)
class MechanismTable:
    space: ActionSpace
    outcomes: dict = field(hash=False)  # profile (action indices) -> frozenset

    @classmethod
    def from_function(cls, space: ActionSpace, mechanism: Callable[[GsipInstance], frozenset]) -> "MechanismTable":
        return cls(space, {p: frozenset(mechanism(space.instance(p))) for p in space.profiles()})

    @classmethod
    def constant(cls, space: ActionSpace, invitation=frozenset()) -> "MechanismTable":
        return cls(space, {p: frozenset(invitation) for p in space.profiles()})

    def outcome(self, profile: Sequence[int]) -> frozenset:
        try:
            return self.outcomes[tuple(profile)]
        except KeyError:
            raise TableError(f"no outcome for profile {tuple(profile)}") from None

    def require_total(self):
        for p in self.space.profiles():
            self.outcome(p)


@dataclass(frozen=True)
class Violation:
    agent: int
    truth: Action
    misreport: Action
    others: tuple  # actions of the other agents, in agent order
    truthful_outcome: frozenset
    deviant_outcome: frozenset


def strategy_proof_violations(table: MechanismTable):
    """Yield every profitable unilateral deviation, in a fixed scan order.

    Order: agent, then true action, then the others' profile, then misreport.
    """
    table.require_total()
    space = table.space
    for i in range(space.n):
        others_sets = [range(len(a)) for j, a in enumerate(space.action_sets) if j != i]
        for truth in range(len(space.action_sets[i])):
            pref = space.true_pref(i, truth)
            for others in itertools.product(*others_sets):
                honest = others[:i] + (truth,) + others[i:]
                z_true = table.outcome(honest)
                for lie in range(len(space.action_sets[i])):
                    z_lie = table.outcome(others[:i] + (lie,) + others[i:])
                    if compare_under(pref, i, z_lie, z_true) is Comparison.PREFERS_S:
                        yield Violation(
                            i,
                            space.action_sets[i][truth],
                            space.action_sets[i][lie],
                            tuple(space.action_sets[j][a] for j, a in zip([j for j in range(space.n) if j != i], others)),
                            z_true,
                            z_lie,
                        )


def check_strategy_proof(table: MechanismTable) -> Violation | None:
    return next(strategy_proof_violations(table), None)


def _bitmask(invitation) -> int:
    return sum(1 << i for i in invitation)


def check_finds_stable(table: MechanismTable) -> tuple | None:
    """First profile (as actions) where a stable invitation exists but is not chosen."""
    table.require_total()
    for p in table.space.profiles():
        stable = stable_mask_table(table.space.instance(p))
        if stable.any() and not stable[_bitmask(table.outcome(p))]:
            return table.space.actions(p)
    return None


# ---------------------------------------------------------------------------
# Exhaustive enumeration of all tables over a small action space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    case: str
    tables_enumerated: int
    sp_tables: int
    stable_finding_tables: int
    intersection: int

    @property
    def verified(self) -> bool:
        """No table is both strategy-proof and stable-finding."""
        return self.intersection == 0


def dec_pair_space() -> ActionSpace:
    """Two agents, outcomes {0,1,2}, every decreasing preference as an action."""
    dec = tuple(PreferenceOrder.parse(s) for s in ("1>0>2", "1>2>0", "1~2>0"))
    return ActionSpace((dec, dec))


def mutual_rejection_space() -> ActionSpace:
    """Two agents happy at any size who may or may not reject each other."""
    base = GsipInstance.from_prefs(["1~2>0", "1~2>0"])
    acts = tuple(
        (Declaration(), Declaration(reject=frozenset({1 - i}))) for i in range(2)
    )
    return ActionSpace(acts, base)


def single_agent_space() -> ActionSpace:
    return ActionSpace(((PreferenceOrder.parse("1>0"), PreferenceOrder.parse("0>1")),))


CASES = {
    "theorem2_asip": dec_pair_space,
    "lemma_gsip": mutual_rejection_space,
    "single_agent": single_agent_space,
}


def table_digits(n_outcomes: int, n_profiles: int, start: int, stop: int) -> np.ndarray:
    """Outcome codes of tables ``start..stop-1``; column j is profile j (base ``n_outcomes``)."""
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((idx.size, n_profiles), dtype=np.int64)
    for j in range(n_profiles):
        idx, digits[:, j] = np.divmod(idx, n_outcomes)
    return digits


def classify_tables(space: ActionSpace, digits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised strategy-proof and stable-finding flags for rows of outcome codes.

    Outcome code ``u`` is the invitation with bitmask ``u``; profile ``j`` is
    the j-th profile of ``space.profiles()``.
    """
    profiles = list(space.profiles())
    index = {p: j for j, p in enumerate(profiles)}
    n_out = 1 << space.n
    sizes = np.array([bin(u).count("1") for u in range(n_out)])

    sp = np.ones(digits.shape[0], dtype=bool)
    for i in range(space.n):
        member = np.array([(u >> i) & 1 for u in range(n_out)], dtype=bool)
        for truth in range(len(space.action_sets[i])):
            ranks = np.array(space.true_pref(i, truth).ranks)
            value = np.where(member, ranks[sizes], ranks[0])  # lower is better
            for p in profiles:
                if p[i] != truth:
                    continue
                honest = value[digits[:, index[p]]]
                for lie in range(len(space.action_sets[i])):
                    q = p[:i] + (lie,) + p[i + 1:]
                    sp &= value[digits[:, index[q]]] >= honest

    finds = np.ones(digits.shape[0], dtype=bool)
    for j, p in enumerate(profiles):
        stable = stable_mask_table(space.instance(p))
        if stable.any():
            finds &= stable[digits[:, j]]
    return sp, finds


def enumerate_tables(space: ActionSpace, case: str = "custom", chunk: int = 1 << 18,
                     cap: int = DEFAULT_TABLE_CAP) -> VerificationReport:
    """Count strategy-proof / stable-finding tables among all ``2^n ** profiles``."""
    n_out, n_prof = 1 << space.n, space.n_profiles
    total = n_out ** n_prof
    if total > cap:
        raise CapacityError(f"{total} tables exceed the enumeration cap {cap}")
    sp_count = finds_count = both = 0
    for start in range(0, total, chunk):
        digits = table_digits(n_out, n_prof, start, min(total, start + chunk))
        sp, finds = classify_tables(space, digits)
        sp_count += int(sp.sum())
        finds_count += int(finds.sum())
        both += int((sp & finds).sum())
    return VerificationReport(case, total, sp_count, finds_count, both)


def table_from_digits(space: ActionSpace, digits: Sequence[int]) -> MechanismTable:
    profiles = list(space.profiles())
    return MechanismTable(
        space, {p: frozenset(i for i in range(space.n) if int(d) >> i & 1) for p, d in zip(profiles, digits)}
    )


def verify_no_sp_stable_mechanism(case: str) -> VerificationReport:
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; choose from {sorted(CASES)}")
    return enumerate_tables(CASES[case](), case)


# ---------------------------------------------------------------------------
# Manipulation search
# ---------------------------------------------------------------------------


def _no_stable_as_empty(result) -> frozenset:
    return result.invitation if result.invitation is not None else frozenset()


MECHANISMS: dict[str, Callable[[GsipInstance], frozenset]] = {
    "algorithm1": lambda inst: _no_stable_as_empty(solve_asip(inst)),
    "inc_mechanism": lambda inst: run_inc_mechanism(ThresholdProfile.from_instance(inst)),
    "gsip_solver": lambda inst: _no_stable_as_empty(solve_gsip(inst)),
}


@dataclass(frozen=True)
class Manipulation:
    misreport: Action
    outcome_truthful: frozenset
    outcome_deviant: frozenset


def _preference_reports(n: int, mech: str, mode: str, cap: int):
    if mech == "inc_mechanism":
        # thresholds cover every increasing report
        for t in range(1, n + 2):
            yield increasing_preference(n, t)
        return
    if mode == "brute_force":
        if n > cap:
            raise CapacityError(f"brute-force manipulation search capped at n={cap}, got n={n}")
        for y in range(1 << n):
            yield acceptance_preference(n, [x + 1 for x in range(n) if y >> x & 1])
    else:
        yield acceptance_preference(n, [])
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                yield acceptance_preference(n, range(lo, hi + 1))


def _declaration_reports(instance: GsipInstance, agent: int, cap: int):
    others = [j for j in range(instance.n) if j != agent]

    def subsets(limit):
        for k in range(limit + 1):
            yield from itertools.combinations(others, k)

    count = sum(1 for _ in subsets(instance.alpha)) * sum(1 for _ in subsets(instance.beta))
    if count > cap:
        raise CapacityError(f"{count} declarations exceed the cap {cap}")
    for f in subsets(instance.alpha):
        for r in subsets(instance.beta):
            yield Declaration(frozenset(f), frozenset(r))


def find_manipulation(
    instance: GsipInstance,
    mech: str,
    agent: int,
    mode: str,
    cap: int | None = None,
) -> Manipulation | None:
    """First misreport that strictly improves ``agent``'s outcome under her truth.

    Modes: ``brute_force`` tries every acceptable-size set (complete for these
    solvers, which read a report only through which sizes beat staying home),
    ``interval_reports`` only contiguous acceptable sets plus the empty one,
    and ``fr_sets`` keeps preferences and varies the declared sets within the
    instance's (alpha, beta) bounds.
    """
    if mech not in MECHANISMS:
        raise ValueError(f"unknown mechanism {mech!r}; choose from {sorted(MECHANISMS)}")
    if not 0 <= agent < instance.n:
        raise IndexError(f"agent {agent} out of range for n={instance.n}")
    run = MECHANISMS[mech]
    truth = instance.pref(agent)
    honest = run(instance)
    if mode in ("brute_force", "interval_reports"):
        reports = _preference_reports(instance.n, mech, mode, DEFAULT_BRUTE_FORCE_CAP if cap is None else cap)
        deviate = lambda rep: instance.with_agent(agent, pref=rep)  # noqa: E731
    elif mode == "fr_sets":
        reports = _declaration_reports(instance, agent, DEFAULT_FR_CAP if cap is None else cap)
        deviate = lambda rep: instance.with_agent(agent, accept=rep.accept, reject=rep.reject)  # noqa: E731
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for rep in reports:
        outcome = run(deviate(rep))
        if compare_under(truth, agent, outcome, honest) is Comparison.PREFERS_S:
            return Manipulation(rep, honest, outcome)
    return None
