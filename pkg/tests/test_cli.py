import json

from stable_invitations.cli import run_cli

from conftest import INSTANCES


def run(capsys, *argv):
    code = run_cli([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_text(capsys):
    code, out, _ = run(capsys, "solve", INSTANCES / "example1.json")
    assert code == 0 and "{a2}" in out


def test_solve_no_stable(capsys):
    code, out, _ = run(capsys, "solve", INSTANCES / "example2.json")
    assert code == 1 and "no stable" in out


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", INSTANCES / "example4.json", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["members"] == [1, 2] and data["path"] == "exact"


def test_solve_multislot(capsys):
    code, out, _ = run(capsys, "solve", INSTANCES / "two_slots.json", "--format", "json")
    assert code == 0 and json.loads(out)["size"] == 1


def test_check(capsys):
    code, out, _ = run(capsys, "check", INSTANCES / "example4.json", "--invitation", "1,3,4")
    assert code == 0 and out.split() == ["IR=false", "EF=true", "stable=false"]


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", INSTANCES / "example4.json", "--format", "json")
    data = json.loads(out)
    assert data["stable_invitations"] == [[], [1, 2], [3, 4]] and data["max_size"] == 2


def test_mechanism(capsys):
    code, out, _ = run(capsys, "mechanism", INSTANCES / "inc_thresholds.json")
    assert code == 0 and "{a1, a2, a3}" in out


def test_manipulate(capsys):
    code, out, _ = run(capsys, "manipulate", INSTANCES / "example3.json", "--agent", 1, "--mode", "interval_reports")
    assert code == 0 and "1>0>2~3" in out


def test_manipulate_fr_sets(capsys):
    code, out, _ = run(capsys, "manipulate", INSTANCES / "mutual_rejection.json", "--agent", 2, "--mode", "fr_sets")
    assert code == 0 and "R={}" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify-impossibility", "--case", "lemma_gsip")
    assert code == 0 and "intersection 0 of 256" in out


def test_verify_single_agent_reports_intersection(capsys):
    code, out, _ = run(capsys, "verify-impossibility", "--case", "single_agent", "--format", "json")
    assert code == 0 and json.loads(out)["intersection"] == 1


def test_gen_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "--n", 5, "--seed", 9, "--alpha-max", 1)
    _, b, _ = run(capsys, "gen", "--n", 5, "--seed", 9, "--alpha-max", 1)
    assert a == b and json.loads(a)["n"] == 5


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", 5, "--trials", 10, "--alpha-max", 1)
    assert code == 0 and "0 mismatches" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "solve", "does-not-exist.json")
    assert code == 2 and "cannot read" in err


def test_bad_document(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": "1.0", "n": 1, "agents": [{"id": 1, "ranks": [0, 0]}]}')
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "agent 1" in err


def test_capacity(capsys):
    code, _, err = run(capsys, "enumerate", INSTANCES / "example4.json", "--cap", 3)
    assert code == 3


def test_usage_error(capsys):
    code, _, err = run(capsys, "solve")
    assert code == 2 and "required" in err
