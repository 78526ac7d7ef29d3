"""Command-line interface: exit codes, JSON output, stdin handling."""

import json

from click.testing import CliRunner

from causalnets.cli import main

from conftest import fixture_path


def run(*args, stdin=None):
    return CliRunner().invoke(main, list(args), input=stdin)


def err(result):
    try:
        return result.stderr
    except ValueError:
        return result.output


def test_validate_ok():
    r = run("validate", fixture_path("n_r.json"))
    assert r.exit_code == 0, r.output


def test_validate_failure_exits_one():
    r = run("validate", "--as", "acn", fixture_path("n_r.json"))
    assert r.exit_code == 1
    assert "lessdot-implies-leadsto" in (r.output + err(r))


def test_validate_malformed_exits_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "nope"}')
    r = run("validate", str(bad))
    assert r.exit_code == 2


def test_validate_stdin():
    with open(fixture_path("n4.json")) as fh:
        payload = fh.read()
    r = run("validate", "-", stdin=payload)
    assert r.exit_code == 0


def test_relations_output():
    r = run("relations", fixture_path("n_r.json"))
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert ["a", "b"] in data["causality"]


def test_configs_and_reach():
    r = run("configs", fixture_path("h_intro.json"))
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert len(data["nodes"]) == 8

    r = run("reach", fixture_path("n4.json"))
    assert r.exit_code == 0
    data = json.loads(r.output)["markings"]
    assert sorted(map(sorted, data)) == [
        ["s1", "s2", "s3"], ["s1", "s2", "s6"],
        ["s1", "s3", "s5"], ["s3", "s4", "s5"]]


def test_fire_sequence():
    r = run("fire", fixture_path("n_r.json"), "--seq", "a,b")
    assert r.exit_code == 0
    assert sorted(json.loads(r.output)["marking"]) == ["s3", "s4", "s5"]


def test_fire_not_enabled_exits_one():
    r = run("fire", fixture_path("n_r.json"), "--seq", "b")
    assert r.exit_code == 1


def test_states_command():
    r = run("states", fixture_path("n_p.json"))
    assert r.exit_code == 0
    data = json.loads(r.output)["states"]
    assert sorted(map(sorted, data)) == [
        [], ["a"], ["a", "b"], ["a", "c"], ["c"]]


def test_translate_round_trip(tmp_path):
    r = run("translate", fixture_path("h_intro.json"), "--to", "racn")
    assert r.exit_code == 0
    net = json.loads(r.output)
    assert net["kind"] == "racn"
    back = tmp_path / "net.json"
    back.write_text(r.output)
    r2 = run("translate", str(back), "--to", "raes")
    assert r2.exit_code == 0
    es = json.loads(r2.output)
    assert sorted(es["events"]) == ["a", "b", "c"]


def test_translate_cn():
    r = run("translate", fixture_path("cn_fork.json"), "--to", "acn")
    assert r.exit_code == 0
    assert json.loads(r.output)["kind"] == "acn"


def test_check_morphism_with_oracle():
    r = run("check-morphism", fixture_path("merge_src.json"),
            fixture_path("merge_tgt.json"), fixture_path("merge_map.json"),
            "--oracle")
    assert r.exit_code == 0, r.output


def test_coproduct_command(tmp_path):
    i0 = tmp_path / "i0.json"
    i1 = tmp_path / "i1.json"
    r = run("coproduct", fixture_path("h_base.json"),
            fixture_path("h_intro.json"),
            "--inj0", str(i0), "--inj1", str(i1))
    assert r.exit_code == 0
    cop = json.loads(r.output)
    assert cop["kind"] == "raes"
    assert json.loads(i0.read_text())["kind"] == "es-morphism"


def test_dot_output():
    r = run("dot", fixture_path("n_r_rev.json"))
    assert r.exit_code == 0
    assert r.output.startswith("digraph")
    # backward transitions are grey boxes, inhibitor arcs circle-tipped
    assert any("~a" in line and "grey" in line
               for line in r.output.splitlines())
    assert "arrowhead=odot" in r.output
    again = run("dot", fixture_path("n_r_rev.json"))
    assert again.output == r.output
