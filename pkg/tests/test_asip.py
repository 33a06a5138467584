import time

import numpy as np
import pytest

from stable_invitations import (
    GeneratorConfig,
    GsipInstance,
    InstanceError,
    MultiSlotInstance,
    generate_random_instance,
    is_stable,
    oracle_max_stable,
    solve_asip,
    solve_asip_multislot,
)
from stable_invitations.documents import load_instance
from stable_invitations.generate import random_rank_matrix

from conftest import INSTANCES


def test_example1_returns_a_stable_singleton(example1):
    res = solve_asip(example1)
    assert res.size == 1 and res.invitation in ({0}, {1})
    assert is_stable(example1, res.invitation)


def test_example1_keeps_highest_index(example1):
    # a1 and a2 are interchangeable; the lower index is removed first
    assert solve_asip(example1).invitation == {1}


def test_example2_no_stable(example2):
    res = solve_asip(example2)
    assert res.invitation is None and not res.stable
    assert res.sizes_tried == (2, 1, 0)


def test_example3_full_invitation(example3):
    assert solve_asip(example3).invitation == {0, 1, 2}


def test_nobody_wants_in():
    inst = GsipInstance.from_prefs(["0>1>2", "0>2>1"])
    assert solve_asip(inst).invitation == frozenset()


def test_zero_agents():
    assert solve_asip(GsipInstance(np.zeros((0, 1), dtype=int))).invitation == frozenset()


def test_rejects_gsip_instances(example5):
    with pytest.raises(InstanceError, match="solve_gsip"):
        solve_asip(example5)


@pytest.mark.parametrize("seed", range(200))
def test_matches_oracle_size(seed):
    cfg = GeneratorConfig(n=1 + seed % 8, preference_family="arbitrary_preorder", seed=seed)
    inst = generate_random_instance(cfg)
    got, want = solve_asip(inst), oracle_max_stable(inst)
    assert got.size == want.size
    if got.stable:
        assert is_stable(inst, got.invitation)


def test_large_instance_runtime():
    ranks = random_rank_matrix(10_000, "arbitrary_preorder", seed=7)
    inst = GsipInstance(ranks)
    start = time.perf_counter()
    res = solve_asip(inst)
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    if res.stable:
        acc = inst.acceptable
        members = np.zeros(inst.n, dtype=bool)
        members[list(res.invitation)] = True
        k = res.size
        assert acc[members, k].all() and not acc[~members, k + 1].any()


class TestMultiSlot:
    def test_two_slots_document(self):
        inst = load_instance(INSTANCES / "two_slots.json")
        slot, res = solve_asip_multislot(inst)
        assert (slot, res.size) == (1, 1)

    def test_identical_slots_tie_to_first(self):
        one = GsipInstance.from_prefs(["2>1>0", "2>1>0"])
        slot, res = solve_asip_multislot(MultiSlotInstance.from_slots([one, one]))
        assert slot == 0 and res.invitation == {0, 1}

    def test_no_slot_works(self, example2):
        slot, res = solve_asip_multislot(MultiSlotInstance.from_slots([example2, example2]))
        assert slot == 0 and not res.stable

    def test_from_slots_keeps_acceptability(self, example1, example3):
        multi = MultiSlotInstance.from_slots([example1, example3])
        assert np.array_equal(multi.slot(0).acceptable, example1.acceptable)
        assert np.array_equal(multi.slot(1).acceptable, example3.acceptable)

    def test_bad_shape(self):
        with pytest.raises(InstanceError, match="shape"):
            MultiSlotInstance(2, 2, np.ones((2, 4), dtype=int))
