import itertools

import numpy as np
import pytest

from stable_invitations import (
    GsipInstance,
    PreferenceOrder,
    ShapeError,
    ThresholdProfile,
    derive_threshold,
    run_inc_mechanism,
    solve_asip,
)
from stable_invitations.core import Comparison, compare_under, increasing_preference


@pytest.mark.parametrize("text, expected", [
    ("3>0>1~2", 3),
    ("2~3>0>1", 2),
    ("3>2>1>0", 1),
    ("0>1~2~3", 4),
])
def test_derive_threshold(text, expected):
    assert derive_threshold(PreferenceOrder.parse(text)) == expected


def test_derive_threshold_rejects_non_increasing():
    with pytest.raises(ShapeError):
        derive_threshold(PreferenceOrder.parse("1>2>0>3"))


def test_inc_thresholds_invites_everyone():
    assert run_inc_mechanism([2, 3, 3]) == {0, 1, 2}


def test_unreachable_thresholds():
    assert run_inc_mechanism([2, 3]) == frozenset()
    assert run_inc_mechanism([4, 4, 4]) == frozenset()


def test_ties_prefer_lower_index():
    assert run_inc_mechanism([1, 1, 4]) == {0, 1}
    assert run_inc_mechanism([2, 2, 2]) == {0, 1, 2}
    assert run_inc_mechanism([4, 1, 1]) == {1, 2}


def test_profile_validation():
    with pytest.raises(ValueError, match="threshold 5"):
        ThresholdProfile((1, 5, 2))


def test_profile_instance_round_trip():
    prof = ThresholdProfile((2, 4, 1))
    assert ThresholdProfile.from_instance(prof.instance()) == prof


def _improves(n, agent, truth, honest, lie_outcome):
    pref = increasing_preference(n, truth)
    return compare_under(pref, agent, lie_outcome, honest) is Comparison.PREFERS_S


@pytest.mark.parametrize("n", [1, 2, 3])
def test_strategy_proof_small(n):
    for true_ts in itertools.product(range(1, n + 2), repeat=n):
        honest = run_inc_mechanism(true_ts)
        for agent in range(n):
            for lie in range(1, n + 2):
                ts = list(true_ts)
                ts[agent] = lie
                assert not _improves(n, agent, true_ts[agent], honest, run_inc_mechanism(ts))


@pytest.mark.parametrize("seed", range(40))
def test_output_is_stable_and_maximum(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    prof = ThresholdProfile(tuple(int(t) for t in rng.integers(1, n + 2, size=n)))
    inst = prof.instance()
    res = solve_asip(inst)
    out = run_inc_mechanism(prof)
    # with increasing preferences the empty set stands in for no stable set
    assert len(out) == (res.size if res.stable else 0)


def test_canonical_preferences_are_increasing():
    for t in range(1, 5):
        pref = increasing_preference(3, t)
        assert derive_threshold(pref) == t
    assert GsipInstance.from_prefs([increasing_preference(3, t) for t in (1, 2, 4)]).is_asip
