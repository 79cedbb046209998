"""Tests for manifest loading and the command line front end."""

import copy
import json
import os
import subprocess
import sys

import pytest

from sepinv import bundled
from sepinv.cli import bundled_manifest_names, main
from sepinv.errors import ManifestError
from sepinv.manifest import Manifest


def valid_doc():
    return {
        "schema": 1,
        "name": "swap-plane",
        "field": {"p": 5},
        "n": 2,
        "generators": [{"matrix": [[0, 1], [1, 0]]}],
        "invariants": {"e1": "x1 + x2", "e2": "x1*x2"},
        "candidates": {"elementary": ["x1 + x2", "x1*x2"]},
    }


def test_valid_manifest_builds():
    m = Manifest.from_dict(valid_doc())
    assert m.name == "swap-plane"
    assert m.ring.variables == ("x1", "x2")
    bm = m.build()
    assert bm.group.order == 2
    assert set(bm.candidates) == {"elementary"}
    assert set(bm.invariants) == {"e1", "e2"}


def test_manifest_accepts_named_variables_and_ideals():
    doc = valid_doc()
    doc["variables"] = ["u", "v"]
    doc["invariants"] = {"e1": "u + v", "e2": "u*v"}
    doc["candidates"] = {"elementary": ["u + v", "u*v"]}
    doc["ideals"] = {"diag": ["u + y_u", "v + y_v"]}
    m = Manifest.from_dict(doc)
    assert m.doubled_ring.variables == ("u", "v", "y_u", "y_v")
    bm = m.build()
    assert "diag" in bm.ideals


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.update(schema=2), "schema"),
        (lambda d: d.pop("name"), "name"),
        (lambda d: d.pop("field"), "field"),
        (lambda d: d.update(field={"p": 6}), "prime"),
        (lambda d: d.update(field={"p": 2, "e": 2}), "modulus"),
        (lambda d: d.update(n=0), "n"),
        (lambda d: d.update(extra=1), "extra"),
        (lambda d: d.update(variables=["x1"]), "variables"),
        (lambda d: d.update(variables=["x1", "x1"]), "variables"),
        (lambda d: d.update(generators=[]), "generators"),
        (
            lambda d: d.update(generators=[{"matrix": [[1, 1], [1, 1]]}]),
            "generators[0]",
        ),
        (
            lambda d: d.update(
                generators=[{"matrix": [[0, 1], [1, 0]], "translation": [1]}]
            ),
            "generators[0]",
        ),
        (lambda d: d["invariants"].update(e1="x1 +"), "invariants.e1"),
        (lambda d: d["invariants"].update(e1="x9"), "invariants.e1"),
        (
            lambda d: d.update(candidates={"bad": ["x1 * * x2"]}),
            "candidates.bad",
        ),
        (lambda d: d.update(components=[]), "components"),
        (lambda d: d.update(components=[[]]), "components"),
        (lambda d: d.update(components=[["x1 -"]]), "components"),
        (lambda d: d.update(ideals={"j": ["z9"]}), "ideals.j"),
        (lambda d: d.update(invariants={"e1": 7}), "invariants"),
    ],
)
def test_manifest_rejects_bad_documents(mutate, fragment):
    doc = copy.deepcopy(valid_doc())
    mutate(doc)
    with pytest.raises(ManifestError) as err:
        Manifest.from_dict(doc)
    assert fragment in str(err.value)


def test_manifest_from_path_errors(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(ManifestError):
        Manifest.from_path(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ManifestError):
        Manifest.from_path(str(bad))


def test_bundled_manifest_names():
    assert bundled_manifest_names() == [
        "additive-2",
        "additive-3",
        "additive-5",
        "id10253",
        "two-planes",
    ]


@pytest.mark.parametrize("name", ["id10253", "two-planes", "additive-2", "additive-3", "additive-5"])
def test_bundled_manifests_agree_with_builders(name):
    from sepinv.cli import _load_model

    from_manifest = _load_model(name)
    if name.startswith("additive-"):
        direct = bundled.additive(int(name.split("-")[1]))
    else:
        direct = bundled.load(name)
    assert from_manifest.group.order == direct.group.order
    assert from_manifest.group.elements == direct.group.elements
    assert from_manifest.ring == direct.ring
    assert from_manifest.model.doubled_ring == direct.model.doubled_ring
    assert set(from_manifest.invariants) == set(direct.invariants)
    for key, f in direct.invariants.items():
        assert from_manifest.invariants[key] == f
    assert set(from_manifest.candidates) == set(direct.candidates)
    for key, cand in direct.candidates.items():
        assert tuple(from_manifest.candidates[key].polynomials) == tuple(
            cand.polynomials
        )
    assert set(from_manifest.ideals) == set(direct.ideals)
    for key, ideal in direct.ideals.items():
        assert from_manifest.ideals[key] == ideal
    assert len(from_manifest.variety.components) == len(direct.variety.components)
    for a, b in zip(from_manifest.variety.components, direct.variety.components):
        assert a == b


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out + captured.err


def test_cli_group_analyze(capsys):
    code, out = run_cli(capsys, ["group", "analyze", "-m", "id10253"])
    assert code == 0
    assert "group order: 8" in out
    assert "min reflection number: 1" in out
    assert "verdict: ok" in out
    assert "elapsed:" in out


def test_cli_group_analyze_json(capsys):
    code, out = run_cli(capsys, ["group", "analyze", "-m", "additive-3", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["command"] == "group analyze"
    assert doc["verdict"] == "ok"
    assert doc["results"]["order"] == 3
    assert doc["results"]["generator_fixed_codims"] == ["inf"]
    assert doc["results"]["min_reflection_number"] is None
    assert "elapsed" not in doc


def test_cli_json_is_deterministic(capsys):
    _, first = run_cli(capsys, ["sepvar", "build", "-m", "two-planes", "--json"])
    _, second = run_cli(capsys, ["sepvar", "build", "-m", "two-planes", "--json"])
    assert first == second
    doc = json.loads(first)
    assert doc["results"]["count"] == 4
    assert doc["results"]["graphs_considered"] == 4


def test_cli_connectivity(capsys):
    code, out = run_cli(
        capsys, ["sepvar", "connectivity", "-m", "two-planes", "--codim", "2"]
    )
    assert code == 0
    assert "separating variety connected in codimension 2: true" in out
    code, out = run_cli(
        capsys,
        ["sepvar", "connectivity", "-m", "two-planes", "--codim", "1", "--json"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["sepvar_connected"] is False
    assert doc["results"]["equivalence_holds"] is True


def test_cli_cmdef(capsys):
    code, out = run_cli(
        capsys, ["cmdef", "-m", "id10253", "--ideal", "J", "--json"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["results"]["betti_numbers"] == [1, 4, 6, 4, 1]
    assert doc["results"]["cmdef"] == 0
    assert doc["results"]["projective_dimension"] == 4
    code, out = run_cli(capsys, ["cmdef", "-m", "id10253", "--ideal", "missing"])
    assert code == 2
    assert "unknown ideal" in out


def test_cli_cmdef_rejects_inhomogeneous(capsys):
    code, out = run_cli(
        capsys, ["cmdef", "-m", "additive-2", "--ideal", "differences"]
    )
    assert code == 2
    assert "homogeneous" in out


def test_cli_verify(capsys):
    code, out = run_cli(
        capsys, ["verify", "-m", "id10253", "--set", "main", "--points", "4"]
    )
    assert code == 0
    assert "necessary evidence only" in out
    code, out = run_cli(capsys, ["verify", "-m", "id10253", "--set", "f1-only"])
    assert code == 1
    assert "verdict: negative" in out
    code, out = run_cli(capsys, ["verify", "-m", "id10253", "--set", "nope"])
    assert code == 2


def test_cli_verify_rejects_bad_points_field(capsys):
    code, out = run_cli(
        capsys, ["verify", "-m", "id10253", "--set", "main", "--points", "9"]
    )
    assert code == 2
    assert "power of the base characteristic" in out


def test_cli_audit(capsys):
    code, out = run_cli(capsys, ["audit", "-m", "id10253"])
    assert code == 0
    assert "conclusion: the group is generated by 1-reflections" in out
    code, out = run_cli(capsys, ["audit", "-m", "two-planes", "--json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "negative"
    assert doc["results"]["conclusion"] == "no conclusion: X is not Cohen-Macaulay"
    code, out = run_cli(capsys, ["audit", "-m", "additive-5"])
    assert code == 1
    assert "not generated by elements with a fixed point" in out


def test_cli_audit_catches_false_cm_assertion(capsys):
    code, out = run_cli(capsys, ["audit", "-m", "two-planes", "--assert-cm"])
    assert code == 1
    assert "internal consistency" in out


def test_cli_reproduce(capsys):
    code, out = run_cli(capsys, ["reproduce", "additive-p", "--p", "3"])
    assert code == 0
    assert "all checks passed" in out or "verdict: ok" in out
    code, out = run_cli(capsys, ["reproduce", "additive-p", "--p", "7"])
    assert code == 2


@pytest.mark.parametrize("name", ["id10253", "two-planes"])
def test_cli_reproduce_bundled_models_exactly(name, capsys):
    code, out = run_cli(capsys, ["reproduce", name, "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "ok"
    rows = doc["results"]["checks"]
    assert rows and all(row["ok"] for row in rows)
    assert {row["provenance"] for row in rows} <= {"reported", "derived"}


def test_cli_manifest_file_and_errors(tmp_path, capsys):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps(valid_doc()))
    code, out = run_cli(capsys, ["group", "analyze", "-m", str(path)])
    assert code == 0
    assert "group order: 2" in out
    code, out = run_cli(capsys, ["group", "analyze", "-m", str(tmp_path / "absent.json")])
    assert code == 2
    bad = tmp_path / "broken.json"
    bad.write_text("]")
    code, out = run_cli(capsys, ["group", "analyze", "-m", str(bad)])
    assert code == 2


def test_cli_verify_from_file_manifest(tmp_path, capsys):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps(valid_doc()))
    code, out = run_cli(
        capsys, ["verify", "-m", str(path), "--set", "elementary", "--points", "25"]
    )
    assert code == 0
    assert "verdict: ok" in out


def test_cli_resource_cap_exit_code():
    env = dict(os.environ, SEPINV_GROUP_CAP="4")
    proc = subprocess.run(
        [sys.executable, "-m", "sepinv.cli", "group", "analyze", "-m", "id10253"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 3
    assert "resource cap" in proc.stdout + proc.stderr


def test_console_script_entry_point():
    proc = subprocess.run(
        ["sepinv", "sepvar", "connectivity", "-m", "additive-2", "--codim", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "equivalence holds: true" in proc.stdout
