import json

import pytest

from stable_invitations import GeneratorConfig, GsipInstance, generate_random_instance, parse_instance, serialize_instance
from stable_invitations.asip import MultiSlotInstance
from stable_invitations.documents import DocumentError, load_instance

from conftest import INSTANCES


def doc(**over):
    base = {"schema_version": "1.0", "n": 2, "agents": [
        {"id": 1, "ranks": [1, 0, 2], "accept": [], "reject": [2]},
        {"id": 2, "ranks": [1, 2, 0], "accept": [], "reject": []},
    ]}
    base.update(over)
    return json.dumps(base)


def test_parse_basic():
    inst = parse_instance(doc())
    assert inst.n == 2 and inst.reject[0] == {1}


@pytest.mark.parametrize("name", sorted(p.name for p in INSTANCES.glob("*.json")))
def test_shipped_documents_round_trip(name):
    text = (INSTANCES / name).read_text()
    inst = load_instance(INSTANCES / name)
    assert parse_instance(serialize_instance(inst)) == inst
    assert serialize_instance(inst) == text.rstrip("\n") or serialize_instance(inst) == text


def test_example_documents_match_fixtures(example4, example5):
    assert load_instance(INSTANCES / "example4.json") == example4
    assert load_instance(INSTANCES / "example5.json") == example5


def test_multislot():
    inst = load_instance(INSTANCES / "two_slots.json")
    assert isinstance(inst, MultiSlotInstance) and inst.m == 2


@pytest.mark.parametrize("seed", range(20))
def test_generated_round_trip_and_deterministic(seed):
    cfg = GeneratorConfig(n=6, alpha_max=2, beta_max=2, seed=seed)
    a, b = generate_random_instance(cfg), generate_random_instance(cfg)
    assert serialize_instance(a) == serialize_instance(b)
    assert parse_instance(serialize_instance(a)) == a


@pytest.mark.parametrize("text, match", [
    ("{not json", "syntax error"),
    (doc(schema_version="2.0"), "schema_version"),
    (doc(n=3), "agents"),
    (doc(agents=[{"id": 1, "ranks": [1, 0, 2]}, {"id": 1, "ranks": [1, 0, 2]}]), "agent 1"),
    (doc(agents=[{"id": 1, "ranks": [1, 0]}, {"id": 2, "ranks": [1, 0, 2]}]), "agent 1: ranks"),
    (doc(agents=[{"id": 1, "ranks": [1, 0, 2], "accept": [1]}, {"id": 2, "ranks": [1, 0, 2]}]), "agent 1"),
    (doc(agents=[{"id": 1, "ranks": [1, 0, 2], "reject": [5]}, {"id": 2, "ranks": [1, 0, 2]}]), "agent 1"),
    (doc(agents=[{"id": 1, "ranks": [1, 1, 2]}, {"id": 2, "ranks": [1, 0, 2]}]), "agent 1"),
    (doc(agents=[{"id": 1, "ranks": "abc"}, {"id": 2, "ranks": [1, 0, 2]}]), "agent 1: ranks"),
])
def test_errors_name_the_problem(text, match):
    with pytest.raises(DocumentError, match=match):
        parse_instance(text)


def test_generator_validation():
    with pytest.raises(ValueError, match="alpha_max"):
        GeneratorConfig(n=3, alpha_max=3)
    with pytest.raises(ValueError, match="family"):
        GeneratorConfig(n=3, preference_family="odd")


def test_exact_bounds_reached():
    inst = generate_random_instance(GeneratorConfig(n=6, alpha_max=2, beta_max=3, seed=5, exact_bounds=True))
    assert (inst.alpha, inst.beta) == (2, 3)


def test_zero_agent_document():
    inst = parse_instance('{"schema_version": "1.0", "n": 0, "agents": []}')
    assert isinstance(inst, GsipInstance) and inst.n == 0
