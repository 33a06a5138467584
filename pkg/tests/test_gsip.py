import pytest
from hypothesis import given, settings

from stable_invitations import (
    CapacityError,
    GeneratorConfig,
    GsipInstance,
    decide_stable_at_least_k,
    generate_random_instance,
    is_individually_rational,
    is_stable,
    oracle_max_stable,
    solve_gsip,
    solve_max_individually_rational,
)
from stable_invitations.gsip import (
    solve_acceptance_forest,
    solve_full_invitation,
    solve_gsip_exact,
    solve_rejection_forest,
)
from stable_invitations.oracle import oracle_max_individually_rational

from conftest import instances


def test_example4_exact_path(example4):
    res = solve_gsip(example4)
    assert res.path == "exact"
    assert res.invitation == {0, 1}


def test_example5_no_stable(example5):
    res = solve_gsip(example5)
    assert res.path == "rejection_forest" and res.invitation is None


def test_mutual_rejection_singleton(mutual_rejection):
    assert solve_gsip(mutual_rejection).invitation == {0}


def test_acceptance_chain_without_stable_set():
    inst = GsipInstance.from_prefs(["2>0>1", "1>0>2"], accept=[{1}, set()])
    res = solve_gsip(inst)
    assert res.path == "acceptance_forest" and res.invitation is None


def test_simple_no_rejection_is_full_invitation():
    inst = GsipInstance.from_prefs(["1>2>3>0", "3>2~1>0", "2>1~3>0"], accept=[{1, 2}, {0}, set()])
    res = solve_gsip(inst)
    assert res.path == "full_invitation" and res.invitation == {0, 1, 2}


def test_full_invitation_guard(example5):
    with pytest.raises(ValueError):
        solve_full_invitation(example5)


def test_forest_guards(example4):
    with pytest.raises(ValueError):
        solve_acceptance_forest(example4)
    with pytest.raises(ValueError):
        solve_rejection_forest(example4)


class TestDecide:
    def test_example4(self, example4):
        assert len(decide_stable_at_least_k(example4, 2)) == 2
        assert decide_stable_at_least_k(example4, 3) is None
        assert decide_stable_at_least_k(example4, 0) is not None

    def test_example5(self, example5):
        assert decide_stable_at_least_k(example5, 0) is None

    def test_range(self, example4):
        with pytest.raises(ValueError):
            decide_stable_at_least_k(example4, 5)


class TestIndividuallyRational:
    def test_example5(self, example5):
        res = solve_max_individually_rational(example5)
        assert res.size == 1

    def test_example2(self, example2):
        assert solve_max_individually_rational(example2).invitation == {0}

    def test_example4(self, example4):
        assert solve_max_individually_rational(example4).size == 2

    @settings(max_examples=100)
    @given(instances(max_n=7, max_alpha=2, max_beta=2))
    def test_matches_oracle(self, inst):
        res = solve_max_individually_rational(inst)
        assert is_individually_rational(inst, res.invitation)
        assert res.size == oracle_max_individually_rational(inst).size


def test_capacity():
    inst = generate_random_instance(GeneratorConfig(n=9, alpha_max=2, beta_max=2, seed=3, exact_bounds=True))
    with pytest.raises(CapacityError):
        solve_gsip(inst, max_exact_n=8)


@settings(max_examples=200)
@given(instances(max_n=7, max_alpha=2, max_beta=2))
def test_solve_gsip_matches_oracle(inst):
    got, want = solve_gsip(inst), oracle_max_stable(inst)
    assert got.size == want.size
    if got.stable:
        assert is_stable(inst, got.invitation)


@settings(max_examples=150)
@given(instances(max_n=7, max_alpha=1, max_beta=0))
def test_acceptance_forest_equals_exact(inst):
    assert solve_acceptance_forest(inst).invitation == solve_gsip_exact(inst).invitation


@settings(max_examples=150)
@given(instances(max_n=7, max_alpha=0, max_beta=1))
def test_rejection_forest_equals_exact(inst):
    assert solve_rejection_forest(inst).invitation == solve_gsip_exact(inst).invitation


@settings(max_examples=100)
@given(instances(max_n=7, max_alpha=2, max_beta=2))
def test_exact_returns_least_bitmask_maximum(inst):
    assert solve_gsip_exact(inst).invitation == oracle_max_stable(inst).invitation
