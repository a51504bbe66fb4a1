import csv
import io
import json

import pytest
from click.testing import CliRunner

from flipspec.cli import main

DP1 = {"kind": "blowup", "ambient": {"projective_space": 2}, "center": ["x1", "x2"]}
LM23 = {"kind": "local_model", "base": "point", "v_plus": [[], []], "v_minus": [[], [], []]}


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="g.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _write


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_geometry(write):
    r = run("geometry", "--input", write(DP1))
    assert r.exit_code == 0, r.output
    rep = json.loads(r.output)
    assert rep["pass"] and rep["dimension_identity"]


def test_decompose_size(write):
    r = run("decompose", "--input", write(LM23))
    assert r.exit_code == 0, r.output
    rep = json.loads(r.output)
    assert rep["decomposition"]["size"] == 9
    assert len(rep["reference_basis"]) == 9


def test_fourier_to_directory(write, tmp_path):
    out = tmp_path / "out"
    r = run("fourier", "--input", write(DP1), "--out", str(out), "--order", "2")
    assert r.exit_code == 0, r.output
    rep = json.loads((out / "fourier.json").read_text())
    assert rep["order"] == 2 and rep["pass"]


def test_spectrum_csv(write):
    r = run("spectrum", "--input", write(DP1), "--locus", "t=1", "--format", "csv")
    assert r.exit_code == 0, r.output
    rows = list(csv.DictReader(io.StringIO(r.output)))
    pred = {(float(x["re"]), float(x["im"])): int(x["multiplicity"]) for x in rows if x["source"] == "predicted"}
    orc = {(float(x["re"]), float(x["im"])): int(x["multiplicity"]) for x in rows if x["source"] == "oracle"}
    assert pred == {(0.0, 0.0): 3, (-1.0, 0.0): 1}
    assert orc == pred


def test_spectrum_json_default_loci(write):
    r = run("spectrum", "--input", write(DP1))
    assert r.exit_code == 0, r.output
    assert len(json.loads(r.output)["loci"]) == 3


def test_spectrum_options_block(write):
    r = run("spectrum", "--input", write({**DP1, "options": {"locus": ["t=2"], "tol": 1e-8}}))
    rep = json.loads(r.output)
    assert rep["tolerance"] == 1e-8 and rep["loci"][0]["t"] == [2.0, 0.0]


@pytest.mark.parametrize("payload", ["{oops", {"kind": "blowup"}, {**DP1, "center": ["zz"]}])
def test_bad_input_exits_2(write, payload):
    r = run("geometry", "--input", write(payload))
    assert r.exit_code == 2


def test_missing_file_exits_2(tmp_path):
    assert run("geometry", "--input", str(tmp_path / "none.json")).exit_code == 2


def test_bad_locus_exits_2(write):
    assert run("spectrum", "--input", write(DP1), "--locus", "s=1").exit_code == 2


def test_csv_only_for_spectrum(write):
    assert run("decompose", "--input", write(DP1), "--format", "csv").exit_code == 2


def test_output_is_deterministic(write):
    p = write(LM23)
    a = run("decompose", "--input", p).output
    b = run("decompose", "--input", p).output
    assert a == b


def test_selftest(tmp_path):
    r = run("selftest", "--out", str(tmp_path))
    assert r.exit_code == 0, r.output
    lines = r.output.strip().splitlines()
    assert len(lines) == 12 and all(l.startswith("[PASS]") for l in lines)
    assert json.loads((tmp_path / "selftest.json").read_text())["pass"]


def test_selftest_reports_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("selftest", "--out", str(a)).exit_code == 0
    assert run("selftest", "--out", str(b)).exit_code == 0
    assert (a / "selftest.json").read_bytes() == (b / "selftest.json").read_bytes()


def test_flop_spectrum_refused(write):
    flop = {"kind": "local_model", "base": "point", "v_plus": [[], []], "v_minus": [[], []]}
    p = write(flop)
    assert run("decompose", "--input", p).exit_code == 0
    assert run("spectrum", "--input", p).exit_code == 2
