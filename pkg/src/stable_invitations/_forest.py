"""Size-set dynamic programming on functional graphs (out-degree at most one).

Each node is either in or out of the invitation. A node may forbid one of
its states, and each edge ``child -> parent`` may forbid some combinations
of (child state, parent state). Every weakly connected component is a tree
hanging from a root, or a cycle with trees hanging from it. For every node
we track which subtree sizes are reachable in each state as a Python int
used as a bitset (bit ``k`` set means size ``k`` is reachable).
"""

from __future__ import annotations

from typing import Callable, Sequence

OUT, IN = 0, 1
EdgeRule = Callable[[int, int, int], bool]  # (child, child_state, parent_state)


def _sumset(a: int, b: int, cap: int) -> int:
    out = 0
    k = 0
    while b:
        if b & 1:
            out |= a << k
        b >>= 1
        k += 1
    return out & cap


class FunctionalGraph:
    """Structure of ``parent`` (``None`` for roots) computed once and reused."""

    def __init__(self, parent: Sequence[int | None]):
        self.parent = list(parent)
        n = len(self.parent)
        self.children: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                self.children[p].append(v)
        self.cycles = self._find_cycles()
        on_cycle = {v for cyc in self.cycles for v in cyc}
        self.on_cycle = on_cycle
        self.roots = [v for v in range(n) if self.parent[v] is None]
        # post-order over the hanging trees: children before parents
        order = []
        stack = self.roots + sorted(on_cycle)
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(c for c in self.children[v] if c not in on_cycle)
        self.postorder = order[::-1]

    def _find_cycles(self) -> list[list[int]]:
        n = len(self.parent)
        state = [0] * n  # 0 unvisited, 1 on current walk, 2 done
        cycles = []
        for start in range(n):
            walk = []
            v = start
            while v is not None and state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = self.parent[v]
            if v is not None and state[v] == 1:
                # cycle listed so that parent(c[k]) == c[k+1]
                cycles.append(walk[walk.index(v):])
            for u in walk:
                state[u] = 2
        return cycles

    def reachable_sizes(self, allowed: Sequence[Sequence[bool]], edge_ok: EdgeRule, s: int) -> int:
        """Bitset of total invitation sizes up to ``s`` satisfying every rule.

        ``allowed[v][state]`` says whether node ``v`` may take ``state``.
        """
        cap = (1 << (s + 1)) - 1
        table: dict[int, tuple[int, int]] = {}
        for v in self.postorder:
            row = []
            for st in (OUT, IN):
                bits = (1 << st) if allowed[v][st] else 0
                for c in self.children[v]:
                    if not bits:
                        break
                    if c in self.on_cycle:
                        continue
                    opts = 0
                    for cs in (OUT, IN):
                        if edge_ok(c, cs, st):
                            opts |= table[c][cs]
                    bits = _sumset(bits, opts, cap)
                row.append(bits)
            table[v] = (row[0], row[1])

        total = 1
        for r in self.roots:
            total = _sumset(total, table[r][OUT] | table[r][IN], cap)
        for cyc in self.cycles:
            comp = 0
            for st0 in (OUT, IN):
                cur = [0, 0]
                cur[st0] = table[cyc[0]][st0]
                for k in range(1, len(cyc)):
                    prev, v = cyc[k - 1], cyc[k]
                    cur = [
                        _sumset(
                            (cur[OUT] if edge_ok(prev, OUT, st) else 0) | (cur[IN] if edge_ok(prev, IN, st) else 0),
                            table[v][st],
                            cap,
                        )
                        for st in (OUT, IN)
                    ]
                last = cyc[-1]
                for st in (OUT, IN):
                    if edge_ok(last, st, st0):
                        comp |= cur[st]
            total = _sumset(total, comp, cap)
        return total

    def least_assignment(self, allowed: list[list[bool]], edge_ok: EdgeRule, s: int) -> frozenset | None:
        """Members of the size-``s`` assignment with the smallest bitmask, if any.

        Fixes nodes from the highest index down, preferring OUT whenever the
        rest can still be completed. ``allowed`` is modified in place.
        """
        if not self.reachable_sizes(allowed, edge_ok, s) >> s & 1:
            return None
        for v in range(len(self.parent) - 1, -1, -1):
            if not allowed[v][IN]:
                continue
            if allowed[v][OUT]:
                allowed[v][IN] = False
                if self.reachable_sizes(allowed, edge_ok, s) >> s & 1:
                    continue
                allowed[v][IN] = True
                allowed[v][OUT] = False
        return frozenset(v for v in range(len(self.parent)) if allowed[v][IN])
