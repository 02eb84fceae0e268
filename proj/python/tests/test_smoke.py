import json
import os
import pathlib
import shutil
import subprocess

import jsonschema
import pytest

import covering_lab as cl

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())


def cli_path():
    env = os.environ.get("COVERING_LAB_CLI")
    if env:
        return env
    built = ROOT / "build" / "covering-lab"
    if built.exists():
        return str(built)
    return shutil.which("covering-lab")


def test_suite_names():
    assert cl.suite_names() == ["spectral", "group", "diophantine", "hull", "classify", "walk"]


def test_spectral_canonical():
    s = cl.spectral()
    assert s["admissible"]
    assert s["characteristic_polynomial"] == "t^3 - t^2 - 1"
    lo, hi = float(s["alpha"]["lower"]), float(s["alpha"]["upper"])
    assert lo <= 1.4655712318767680 <= hi
    assert s["least_exponent_above_two"] == 2


def test_spectral_inadmissible():
    s = cl.spectral([1, 0, 0, 0, 1, 0, 0, 0, 1])
    assert not s["admissible"]
    assert s["reason"]


def test_search_contains_canonical():
    found = cl.search(1)
    assert [0, 0, 1, 1, 0, 0, 0, 1, 1] in found


def test_minimize_sequence():
    seq = cl.minimize("1e-3", count=3, ratio="1000")
    assert len(seq) == 3
    for item, bound in zip(seq, [1e-3, 1e-6, 1e-9]):
        assert abs(float(item["certified_enclosure"]["upper"])) < bound
        assert abs(float(item["certified_enclosure"]["lower"])) < bound


def test_walk_summary():
    w = cl.walk("z2", trials=2000, steps=200, seed=1)
    assert w["trials"] == 2000
    assert len(w["return_counts"]) == 201
    assert w["return_counts"][0] == 2000
    assert w == cl.walk("z2", trials=2000, steps=200, seed=1)


def test_classify_rotation():
    c = cl.classify([0, -1, 1, 0])
    assert c["class"] == 2
    c = cl.classify(group="inoue")
    assert c["class"] is None


def test_report_validates_against_schema():
    report, status = cl.run_suite("hull")
    jsonschema.validate(report, SCHEMA)
    assert status == 0
    assert report["summary"]["verified"] == report["summary"]["claims"]


def test_config_error_is_value_error(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[walk]\nsteps = -4\n")
    with pytest.raises(ValueError, match="line 2"):
        cl.config(str(bad))


def test_shipped_config_is_the_default():
    assert cl.config(str(ROOT / "paper.toml")) == cl.config()


@pytest.mark.skipif(cli_path() is None, reason="covering-lab binary not built")
def test_cli_json_matches_schema():
    out = subprocess.run(
        [cli_path(), "verify", "--suite", "classify", "--config", str(ROOT / "paper.toml"), "--format", "json"],
        capture_output=True, text=True, check=True)
    jsonschema.validate(json.loads(out.stdout), SCHEMA)


@pytest.mark.skipif(cli_path() is None, reason="covering-lab binary not built")
def test_cli_exit_code_for_inadmissible_matrix():
    out = subprocess.run(
        [cli_path(), "verify", "--suite", "spectral", "--config", str(ROOT / "tests" / "data" / "identity.toml"),
         "--format", "csv"],
        capture_output=True, text=True)
    assert out.returncode == 1
    rows = out.stdout.strip().splitlines()
    assert len(rows) == 8
    assert ",failed," in rows[1]
    assert all(",skipped," in r for r in rows[2:-1])
