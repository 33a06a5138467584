import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from stable_invitations import GsipInstance

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


def record_criterion(number, ok, detail):
    CRITERIA.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    print(CRITERIA[-1])
    return ok


# --- worked examples -----------------------------------------------------


@pytest.fixture
def example1():
    return GsipInstance.from_prefs(["1>0>2~3", "1>0>2~3", "0>1~2~3"])


@pytest.fixture
def example2():
    return GsipInstance.from_prefs(["1>0>2", "2>0>1"])


@pytest.fixture
def example3():
    return GsipInstance.from_prefs(["1>2>3>0", "3>0>1~2", "3>0>1~2"])


@pytest.fixture
def example4():
    return GsipInstance.from_prefs(
        ["1~2~3~4>0"] * 4,
        accept=[{1}, {0}, {3}, {2}],
        reject=[{2}, {3}, {0}, {1}],
    )


@pytest.fixture
def example5():
    return GsipInstance.from_prefs(["1~2~3>0"] * 3, reject=[{1}, {2}, {0}])


@pytest.fixture
def mutual_rejection():
    return GsipInstance.from_prefs(["1~2>0"] * 2, reject=[{1}, {0}])


# --- definition-literal reference ------------------------------------------


def literal_stable(instance, S):
    """Stability read straight off the definitions, without the library predicates."""
    S = set(S)
    n = instance.n
    r = [[int(v) for v in row] for row in instance.ranks]
    for i in S:
        if not instance.accept[i] <= S or instance.reject[i] & S or not r[i][len(S)] < r[i][0]:
            return False
    for j in set(range(n)) - S:
        T = S | {j}
        if instance.accept[j] <= T and not instance.reject[j] & T and r[j][len(T)] < r[j][0]:
            return False
    return True


def all_subsets(n):
    for k in range(n + 1):
        for c in itertools.combinations(range(n), k):
            yield frozenset(c)


# --- hypothesis strategies -------------------------------------------------


@st.composite
def rank_rows(draw, n):
    # odd rank for 0, even ranks elsewhere: never a tie with the outside option
    home = 2 * draw(st.integers(0, n)) + 1
    rest = [2 * draw(st.integers(0, n)) for _ in range(n)]
    return [home] + rest


@st.composite
def instances(draw, max_n=6, max_alpha=None, max_beta=None, simple=False):
    n = draw(st.integers(0, max_n))
    rows = []
    for _ in range(n):
        row = draw(rank_rows(n))
        if simple:
            row[0] = 2 * n + 1
        rows.append(row)
    ranks = np.array(rows, dtype=np.int64).reshape(n, n + 1)

    def sets(bound):
        out = []
        for i in range(n):
            others = [j for j in range(n) if j != i]
            top = len(others) if bound is None else min(bound, len(others))
            k = draw(st.integers(0, top))
            out.append(frozenset(draw(st.permutations(others))[:k]) if k else frozenset())
        return tuple(out)

    return GsipInstance(ranks, sets(max_alpha), sets(max_beta))
