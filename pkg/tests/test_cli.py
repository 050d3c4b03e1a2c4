import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from fdradius.cli import main
from fdradius.tuples import load_tuple

DATA = Path(__file__).resolve().parent.parent / "data"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    r = list(csv.reader(io.StringIO(text)))
    return r[0], np.array([[float(v) for v in row] for row in r[1:]])


def test_compute_pauli(capsys):
    code, out, _ = run(["compute", str(DATA / "pauli3.json"), "--f", "power:2", "--delta", "0"], capsys)
    obj = json.loads(out)
    assert code == 0
    assert obj["joint_norm"] == pytest.approx(np.sqrt(3), abs=1e-9)
    assert obj["f_delta_radius"][0] == pytest.approx(1.0, abs=1e-3)
    assert len(obj["witnesses"]["levels"][0]["radius"]) == 2


def test_compute_identity(capsys):
    code, out, _ = run(["compute", str(DATA / "identity1.json"), "--delta", "0", "--delta", "0.5"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["f_delta_radius"] == pytest.approx([1.0, 1.0], abs=1e-9)


def test_compute_r2_note_and_empty(capsys):
    code, out, _ = run(["compute", str(DATA / "r2example.json"), "--delta", "1.2", "--delta", "2.0"], capsys)
    obj = json.loads(out)
    assert code == 0
    assert obj["f_delta_radius"][0] == pytest.approx(1.0, abs=1e-3)
    assert obj["f_delta_radius"][1] is None
    assert obj["errors"][0]["error"] == "EmptyFeasibleSet"
    assert any("EXPECTED-DISCREPANCY" in n for n in obj["notes"])


def test_compute_delta_grid(capsys):
    code, out, _ = run(["compute", str(DATA / "pauli2.json"), "--delta-grid", "0:1:3"], capsys)
    assert code == 0 and json.loads(out)["deltas"] == [0.0, 0.5, 1.0]


def test_verify_clean_and_out(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, err = run(["verify", "--kind", "ginibre", "--count", "2", "--starts", "16", "--samples", "20000",
                        "--relations", "t1_scale,lem3,chain", "--out", str(out)], capsys)
    assert code == 0 and "violation_candidate=0" in err
    assert json.loads(out.read_text())["summary"]["violation_candidate"] == 0


def test_verify_example_r2_exits_2(capsys):
    code, out, _ = run(["verify", "--relations", "example_r2", "--count", "1"], capsys)
    assert code == 2
    assert json.loads(out)["summary"]["violation_candidate"] == 1


def test_reproduce(capsys):
    code, out, _ = run(["reproduce"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert sum("EXPECTED-DISCREPANCY" in ln for ln in lines) == 1
    assert "delta=1.2" in [ln for ln in lines if "EXPECTED" in ln][0]
    assert all(ln.endswith("MATCH") or ln.endswith("EXPECTED-DISCREPANCY") for ln in lines)


def test_range_bloch_sphere(capsys):
    code, out, _ = run(["range", str(DATA / "pauli3.json"), "--samples", "2000"], capsys)
    header, arr = rows(out)
    assert code == 0 and header == ["re_1", "im_1", "re_2", "im_2", "re_3", "im_3", "vecnorm_f"]
    pts = arr[:, [0, 2, 4]]
    assert np.max(np.abs(arr[:, [1, 3, 5]])) <= 1e-12
    assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 1.0)) <= 1e-9


def test_range_disk(capsys):
    _, out, _ = run(["range", str(DATA / "pauli2.json"), "--samples", "20000"], capsys)
    _, arr = rows(out)
    r = np.hypot(arr[:, 0], arr[:, 2])
    assert r.max() <= 1 + 1e-9 and r.max() >= 0.999


def test_range_diag_hull(capsys):
    _, out, _ = run(["range", str(DATA / "diag1i.json"), "--samples", "3000"], capsys)
    _, arr = rows(out)
    # numerical range of diag(1, i) is the segment [1, i]
    assert np.allclose(arr[:, 0] + arr[:, 1], 1.0, atol=1e-12)
    assert arr[:, 0].min() >= -1e-12 and arr[:, 1].min() >= -1e-12


def test_range_witness_recheck(capsys):
    path = DATA / "pauli3.json"
    _, out, _ = run(["range", str(path), "--samples", "200", "--with-witness", "--f", "power:2"], capsys)
    header, arr = rows(out)
    A = load_tuple(path)
    d = A.dim
    X = arr[:, -2 * d::2] + 1j * arr[:, -2 * d + 1::2]
    forms = np.einsum("si,mij,sj->sm", X.conj(), A.mats, X)
    assert np.allclose(forms.real, arr[:, 0:2 * A.n:2], atol=1e-12)
    assert np.allclose(forms.imag, arr[:, 1:2 * A.n:2], atol=1e-12)
    vec = np.linalg.norm(np.einsum("mij,sj->smi", A.mats, X), axis=2)
    assert np.allclose(np.sqrt(np.sum(vec ** 2, axis=1)), arr[:, 2 * A.n], atol=1e-12)


def test_range_deterministic(capsys):
    argv = ["range", str(DATA / "pauli2.json"), "--samples", "100", "--seed", "3"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_errors_exit_1(capsys):
    assert main(["compute", "/nonexistent.json"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["compute", "x.json", "--f", "nonsense"])
    assert exc.value.code == 1
    assert main(["verify", "--kind", "nope"]) == 1


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "fdradius", "compute", str(DATA / "identity1.json")],
                         capture_output=True, text=True, env=dict(os.environ))
    assert out.returncode == 0 and json.loads(out.stdout)["f_norm"] == pytest.approx(1.0)
