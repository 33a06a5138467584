"""Maximum stable invitations with acceptance and rejection sets.

``solve_gsip`` picks a solver from the instance's (alpha, beta) class:

* no sets at all: the anonymous greedy (``asip.solve_asip``);
* no rejection sets and everyone happy at any size: the full invitation;
* acceptance sets of size <= 1 only: DP over the acceptance forest;
* rejection sets of size <= 1 only: DP over the rejection forest;
* anything else: exact backtracking, capped by ``max_exact_n``.

All paths except the anonymous one break ties towards the smallest member
bitmask (agent 0 is the lowest bit).
"""

from __future__ import annotations

from ._forest import IN, OUT, FunctionalGraph
from .asip import solve_asip
from .core import CapacityError, GsipInstance, SolveResult, is_individually_rational, is_stable

DEFAULT_MAX_EXACT_N = 24


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Search:
    """Backtracking over in/out decisions for one target size.

    With ``envy`` off only individual rationality is enforced.
    """

    def __init__(self, instance: GsipInstance, s: int, envy: bool):
        self.n = instance.n
        self.s = s
        self.fm = instance.accept_masks
        self.rm = instance.reject_masks
        acc = instance.acceptable
        self.blocked = sum(1 << i for i in range(self.n) if not acc[i, s])
        self.enviers = [j for j in range(self.n) if envy and acc[j, s + 1]]
        self.nodes = 0

    def _propagate(self, inn: int, out: int):
        full = (1 << self.n) - 1
        fm, rm, s = self.fm, self.rm, self.s
        while True:
            before = (inn, out)
            if inn & out:
                return None
            m = inn
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                if fm[i] & out or rm[i] & inn:
                    return None
                inn |= fm[i]
                out |= rm[i]
            if inn & out:
                return None
            und = full & ~(inn | out)
            for j in self.enviers:
                if not out >> j & 1:
                    continue
                if fm[j] & out or rm[j] & inn:
                    continue
                cand_out, cand_in = fm[j] & und, rm[j] & und
                if not cand_out and not cand_in:
                    return None
                if not cand_in and cand_out & (cand_out - 1) == 0:
                    out |= cand_out
                elif not cand_out and cand_in & (cand_in - 1) == 0:
                    inn |= cand_in
            if inn & out:
                return None
            und = full & ~(inn | out)
            k_in, k_und = _popcount(inn), _popcount(und)
            if k_in > s or k_in + k_und < s:
                return None
            if und and k_in == s:
                out |= und
            elif und and k_in + k_und == s:
                inn |= und
            if (inn, out) == before:
                return inn, out

    def run(self) -> frozenset | None:
        found = self._dfs(0, self.blocked)
        if found is None:
            return None
        return frozenset(i for i in range(self.n) if found >> i & 1)

    def _dfs(self, inn: int, out: int) -> int | None:
        self.nodes += 1
        state = self._propagate(inn, out)
        if state is None:
            return None
        inn, out = state
        und = ((1 << self.n) - 1) & ~(inn | out)
        if not und:
            return inn
        top = 1 << (und.bit_length() - 1)
        # OUT first on the highest free agent gives the least bitmask
        found = self._dfs(inn, out | top)
        if found is None:
            found = self._dfs(inn | top, out)
        return found


def _check_cap(instance: GsipInstance, max_exact_n: int):
    if instance.n > max_exact_n:
        raise CapacityError(f"exact search capped at n={max_exact_n}, got n={instance.n}")


def _exact(instance: GsipInstance, lowest: int, envy: bool, path: str) -> SolveResult:
    nodes, tried = 0, []
    for s in range(instance.n, lowest - 1, -1):
        tried.append(s)
        search = _Search(instance, s, envy)
        found = search.run()
        nodes += search.nodes
        if found is not None:
            return SolveResult(found, nodes=nodes, sizes_tried=tuple(tried), path=path)
    return SolveResult(None, nodes=nodes, sizes_tried=tuple(tried), path=path)


def decide_stable_at_least_k(
    instance: GsipInstance, k: int, max_exact_n: int = DEFAULT_MAX_EXACT_N
) -> frozenset | None:
    """A stable invitation of size >= k (the largest such), or None."""
    if not 0 <= k <= instance.n:
        raise ValueError(f"k must lie in 0..{instance.n}, got {k}")
    _check_cap(instance, max_exact_n)
    return _exact(instance, k, envy=True, path="exact").invitation


def solve_gsip_exact(instance: GsipInstance, max_exact_n: int = DEFAULT_MAX_EXACT_N) -> SolveResult:
    """Generic exponential path, used for the NP-hard cells and for cross-checks."""
    _check_cap(instance, max_exact_n)
    return _exact(instance, 0, envy=True, path="exact")


def solve_max_individually_rational(
    instance: GsipInstance, max_exact_n: int = DEFAULT_MAX_EXACT_N
) -> SolveResult:
    """Largest invitation that is individually rational; envy is ignored."""
    _check_cap(instance, max_exact_n)
    res = _exact(instance, 0, envy=False, path="exact_ir")
    assert res.invitation is not None and is_individually_rational(instance, res.invitation)
    return res


def max_envy_free(instance: GsipInstance) -> frozenset:
    """The full invitation: nobody is left out, so nobody can envy."""
    return frozenset(range(instance.n))


def solve_full_invitation(instance: GsipInstance) -> SolveResult:
    """Full invitation for no-rejection instances where every size beats home."""
    if instance.beta != 0 or not instance.all_simple():
        raise ValueError("full-invitation shortcut needs beta = 0 and simple preferences")
    return SolveResult(frozenset(range(instance.n)), path="full_invitation")


def _forest_solve(instance: GsipInstance, sets, edge_rule, path: str) -> SolveResult:
    n = instance.n
    parent = [next(iter(s)) if s else None for s in sets]
    graph = FunctionalGraph(parent)
    acc = instance.acceptable
    nodes, tried = 0, []
    for s in range(n, -1, -1):
        tried.append(s)
        wants_in = acc[:, s + 1]
        allowed = [
            [parent[v] is not None or not wants_in[v], bool(acc[v, s])]
            for v in range(n)
        ]
        rule = edge_rule(wants_in)
        nodes += 1
        found = graph.least_assignment(allowed, rule, s)
        if found is not None:
            return SolveResult(found, nodes=nodes, sizes_tried=tuple(tried), path=path)
    return SolveResult(None, nodes=nodes, sizes_tried=tuple(tried), path=path)


def _acceptance_rule(wants_in):
    def ok(child, cs, ps):
        if cs == IN and ps == OUT:
            return False  # member needs its accepted agent present
        if cs == OUT and ps == IN and wants_in[child]:
            return False  # outsider would be happy to join
        return True

    return ok


def _rejection_rule(wants_in):
    def ok(child, cs, ps):
        if cs == IN and ps == IN:
            return False  # member next to its rejected agent
        if cs == OUT and ps == OUT and wants_in[child]:
            return False  # outsider would be happy to join
        return True

    return ok


def solve_acceptance_forest(instance: GsipInstance) -> SolveResult:
    """Polynomial solver for instances with |F_i| <= 1 and no rejection sets."""
    if instance.alpha > 1 or instance.beta != 0:
        raise ValueError("acceptance-forest solver needs alpha <= 1 and beta = 0")
    return _forest_solve(instance, instance.accept, _acceptance_rule, "acceptance_forest")


def solve_rejection_forest(instance: GsipInstance) -> SolveResult:
    """Polynomial solver for instances with |R_i| <= 1 and no acceptance sets."""
    if instance.beta > 1 or instance.alpha != 0:
        raise ValueError("rejection-forest solver needs beta <= 1 and alpha = 0")
    return _forest_solve(instance, instance.reject, _rejection_rule, "rejection_forest")


def solve_gsip(instance: GsipInstance, max_exact_n: int = DEFAULT_MAX_EXACT_N) -> SolveResult:
    alpha, beta = instance.alpha, instance.beta
    if alpha == 0 and beta == 0:
        res = solve_asip(instance)
    elif beta == 0 and instance.all_simple():
        res = solve_full_invitation(instance)
    elif alpha <= 1 and beta == 0:
        res = solve_acceptance_forest(instance)
    elif alpha == 0 and beta <= 1:
        res = solve_rejection_forest(instance)
    else:
        res = solve_gsip_exact(instance, max_exact_n)
    if res.invitation is not None and not is_stable(instance, res.invitation):
        raise AssertionError(f"{res.path} returned an unstable invitation {sorted(res.invitation)}")
    return res
