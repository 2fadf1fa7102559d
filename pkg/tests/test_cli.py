import json
from importlib import resources

import jsonschema
import pytest

from quadmod import serialize
from quadmod.cli import CLIError, main, parse_cycles
from quadmod.quadmodule import build_example_alpha_beta


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_passes_on_the_bipartite_builtin(capsys):
    code, out, err = run_cli(capsys, "validate", "--builtin", "mn:2,3")
    assert code == 0
    assert err == ""
    assert "RESULT: pass" in out
    assert "ok   left-action-compatible" in out


def test_validate_flags_noncommuting_twists(capsys):
    code, out, _ = run_cli(
        capsys, "validate", "--builtin", "perm:3,(0 1 2),(0 1)")
    assert code == 1
    assert "FAIL left-action-compatible" in out
    assert "RESULT: fail" in out


def test_ktheory_renders_the_cyclic_group(capsys):
    code, out, _ = run_cli(capsys, "ktheory", "--builtin", "mn:2,4")
    assert code == 0
    assert "K0 = Z/15, K1 = 0" in out


def test_full_json_report_matches_the_schema(capsys):
    code, out, _ = run_cli(
        capsys, "full", "--builtin", "mn:2,2", "--format", "json",
        "--seed", "5")
    assert code == 0
    report = json.loads(out)
    schema = json.loads(
        resources.files("quadmod").joinpath("report_schema.json").read_text())
    jsonschema.validate(report, schema)
    assert report["format"] == "quadmod-report-v1"
    assert report["passed"] is True
    titles = [s["title"] for s in report["sections"]]
    assert titles == [
        "module validation",
        "tower construction (depth 3)",
        "operator identities",
        "matrix states",
        "k-theory",
    ]
    ktheory = report["sections"][-1]
    assert ktheory["groups"]["K0"] == {"freeRank": 0, "factors": [3]}
    assert any(c["id"] == "smith-self-check" for c in ktheory["checks"])


def test_reports_are_deterministic(capsys):
    first = run_cli(capsys, "full", "--builtin", "perm:2,(0 1),(0 1)",
                    "--format", "json")
    second = run_cli(capsys, "full", "--builtin", "perm:2,(0 1),(0 1)",
                     "--format", "json")
    assert first == second
    third = run_cli(capsys, "ck", "--builtin", "mn:2,2")
    fourth = run_cli(capsys, "ck", "--builtin", "mn:2,2")
    assert third == fourth


def test_output_goes_to_a_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, _ = run_cli(
        capsys, "validate", "--builtin", "mn:2,2", "--output", str(target))
    assert code == 0
    assert out == ""
    assert "RESULT: pass" in target.read_text()


def test_serialized_input_gets_the_two_isometry_section(tmp_path, capsys):
    spec = build_example_alpha_beta(3, [1, 2, 0], [2, 0, 1])
    path = tmp_path / "twisted.json"
    serialize.save(spec, path)
    code, out, _ = run_cli(capsys, "ck", "--input", str(path))
    assert code == 0
    assert "== two-isometry checks ==" in out
    assert "two-isometry-hom-u-second-twist" in out
    # the mismatched attributions stay out of the report
    assert "two-isometry-hom-u-first-twist" not in out


def test_paired_families_have_no_two_isometry_section(capsys):
    code, out, _ = run_cli(capsys, "ck", "--builtin", "mn:2,2")
    assert code == 0
    assert "two-isometry" not in out
    assert "amalgamated matrix:" in out
    assert "aperiodic: yes (exponent 2)" in out


def test_unusable_inputs_exit_with_two(capsys):
    cases = [
        ("validate", "--builtin", "mn:2"),
        ("validate", "--builtin", "mn:a,b"),
        ("validate", "--builtin", "ring:3"),
        ("validate", "--builtin", "perm:3,(0 1 9),(0 1)"),
        ("validate", "--builtin", "perm:3,(0 1,(0 1)"),
        ("fock", "--input", "/does/not/exist.json"),
        ("fock", "--builtin", "mn:0,2"),
    ]
    for argv in cases:
        code, _, err = run_cli(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("error:"), argv


def test_missing_source_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fock"])
    assert exc.value.code == 2


def test_malformed_spec_file_exits_with_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"format": "quadmod-spec-v1"}')
    code, _, err = run_cli(capsys, "validate", "--input", str(path))
    assert code == 2
    assert "bad spec file" in err


def test_cycle_parsing():
    assert parse_cycles(3, "") == [0, 1, 2]
    assert parse_cycles(3, "id") == [0, 1, 2]
    assert parse_cycles(3, "(0 1 2)") == [1, 2, 0]
    assert parse_cycles(3, "(0 2 1)") == [2, 0, 1]
    assert parse_cycles(4, "(0 1)(2 3)") == [1, 0, 3, 2]
    assert parse_cycles(4, "(1 3)") == [0, 3, 2, 1]
    with pytest.raises(CLIError, match="out of range"):
        parse_cycles(2, "(0 5)")
    with pytest.raises(CLIError, match="two cycles"):
        parse_cycles(3, "(0 1)(1 2)")
    with pytest.raises(CLIError, match="at least two"):
        parse_cycles(3, "(0)")
    with pytest.raises(CLIError, match="bad permutation"):
        parse_cycles(3, "0 1 2")
    with pytest.raises(CLIError, match="non-integer"):
        parse_cycles(3, "(a b)")


def test_depth_flag_controls_the_tower(capsys):
    code, out, _ = run_cli(
        capsys, "fock", "--builtin", "mn:2,2", "--depth", "2")
    assert code == 0
    assert "tower construction (depth 2)" in out
    assert "level dims: 4 4 16" in out
    code, _, err = run_cli(
        capsys, "fock", "--builtin", "mn:2,2", "--depth", "1")
    assert code == 2
    assert "depth" in err


def test_depth_falls_back_when_the_budget_is_tight(monkeypatch, capsys):
    monkeypatch.setenv("QUADMOD_MAX_DIM", "200")
    code, out, _ = run_cli(capsys, "fock", "--builtin", "mn:2,3")
    assert code == 0
    assert "tower construction (depth 2)" in out
    monkeypatch.setenv("QUADMOD_MAX_DIM", "20")
    code, _, err = run_cli(capsys, "fock", "--builtin", "mn:2,3")
    assert code == 2
    assert "too large" in err
