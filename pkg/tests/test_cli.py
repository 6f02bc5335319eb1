import json
from pathlib import Path

import pytest

from hasseforge.cli.main import main
from hasseforge.cli.scenarios import DESCRIPTIONS, builtin_names, load_config
from hasseforge.errors import ConfigInvalid, UnknownScenario

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"


def run_json(capsys, *argv):
    code = main(["run", *argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, out


def test_list_has_nine_scenarios(capsys):
    assert main(["list"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 9
    assert [ln.split()[0] for ln in lines] == builtin_names()


def test_builtin_configs_validate():
    for name in builtin_names():
        cfg = load_config(f"builtin:{name}")
        assert cfg["name"] == name


def test_nonexample_defaults():
    cfg = load_config("builtin:nonexample-nilpotent")
    op = cfg["operations"][0]
    assert (op["op"], op["p"], op["level"]) == ("nilpotent_witness", 2, 1)


def test_demo_quaternion_passes(capsys):
    code, out = run_json(capsys, str(CONFIGS / "demo-quaternion.json"))
    report = json.loads(out)
    assert code == 0 and report["passed"]
    ops = {r["op"]: r for r in report["results"]}
    assert ops["hasse_axioms"]["passed"]
    assert ops["split_check"]["details"]["split"] is True
    assert ops["classify"]["details"]["flags"]["delta_irreducible"] is True


def test_corrupted_derivation_fails_with_counterexample(capsys):
    code, out = run_json(capsys, str(CONFIGS / "corrupted-derivation.json"))
    assert code == 1
    details = json.loads(out)["results"][0]["details"]
    assert details["r3_ok"] is False
    assert any(c["axiom"] == "R3" for c in details["counterexamples"])


def test_missing_field_is_config_error(capsys):
    assert main(["run", str(CONFIGS / "missing-field.json")]) == 2
    assert "field" in capsys.readouterr().err


def test_config_errors_carry_json_pointer(tmp_path):
    bad = tmp_path / "typo.json"
    bad.write_text(json.dumps({"name": "x", "field": {"char": 5},
                               "operations": [{"op": "hasse_axioms", "ordr": 3}]}))
    with pytest.raises(ConfigInvalid) as exc:
        load_config(str(bad))
    assert exc.value.pointer == "/operations/0/ordr"
    bad.write_text("{not json")
    with pytest.raises(ConfigInvalid):
        load_config(str(bad))
    bad.write_text(json.dumps({"name": "x", "field": {"char": 4}, "operations": [{"op": "lattice",
                                                                                   "generators": [[[1]]]}]}))
    with pytest.raises(ConfigInvalid) as exc:
        load_config(str(bad))
    assert exc.value.pointer == "/field"


def test_construction_errors_exit_two(tmp_path, capsys):
    cfg = tmp_path / "deg.json"
    cfg.write_text(json.dumps({"name": "x", "field": {"char": 5}, "operations": [{"op": "kummer_extend",
                                                                                   "degree": 3}]}))
    assert main(["run", str(cfg)]) == 2
    assert "/operations/0" in capsys.readouterr().err


def test_unknown_builtin(capsys):
    with pytest.raises(UnknownScenario):
        load_config("builtin:bogus")
    assert main(["run", "builtin:bogus"]) == 2
    assert main(["explain", "bogus"]) == 2


@pytest.mark.parametrize("name", sorted(DESCRIPTIONS))
def test_explain_describes_each_scenario(capsys, name):
    assert main(["explain", name]) == 0
    text = capsys.readouterr().out
    assert name in text and len(text.splitlines()) > 3


def test_explain_crossed_product_gives_formula(capsys):
    main(["explain", "crossed-product-quaternion"])
    assert "sum delta^(n)(k_b) u^b" in capsys.readouterr().out


def test_out_file_and_seed_override(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["run", "builtin:hasse-axioms", "--seed", "11", "--out", str(out), "--trunc", "8"])
    assert code == 0
    text = capsys.readouterr().out
    assert "PASS" in text
    report = json.loads(out.read_text())
    assert report["seed"] == 11 and report["trunc"] == 8
    assert set(report) == {"tool", "version", "scenario", "seed", "trunc", "passed", "results", "caveats"}


def test_parallel_merges_by_name(capsys):
    code, out = run_json(capsys, "builtin:nonexample-nilpotent", "builtin:classify-matrix", "--parallel")
    doc = json.loads(out)
    assert code == 0
    assert [r["scenario"] for r in doc["reports"]] == ["classify-matrix", "nonexample-nilpotent"]


def test_lattice_operation_over_prime_field(tmp_path, capsys):
    cfg = tmp_path / "lat.json"
    cfg.write_text(json.dumps({"name": "lat", "field": {"char": 3}, "operations": [
        {"op": "lattice", "generators": [[[0, 1], [1, 0]]],
         "expect": {"completely_reducible": True, "irreducible": False}}]}))
    code, out = run_json(capsys, str(cfg))
    assert code == 0
    assert json.loads(out)["results"][0]["details"]["implications_hold"]


def test_shipped_schema_matches_package_copy():
    packaged = ROOT / "src" / "hasseforge" / "schemas" / "scenario.v1.json"
    assert (ROOT / "schemas" / "scenario.v1.json").read_bytes() == packaged.read_bytes()
