import json
import subprocess
import sys

import pytest

from harmquat.characters import Frame, coordinate_fields
from harmquat.cli import main, run
from harmquat.fieldfile import write_field
from harmquat.harmonic import basis_quat_harmonic
from harmquat.poly import X1, Polynomial3, QField, VectorPoly

Z = Polynomial3()
PI1, PI2, PI3 = coordinate_fields(Frame.standard())


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, p in [("pi1", PI1), ("pi2", PI2), ("mixed", PI1 * PI1 + PI2 + basis_quat_harmonic(3)[5]),
                    ("bad", QField(X1, VectorPoly(Z, Z, Z))), ("pert", QField(0, VectorPoly(Z, Z, X1)))]:
        paths[name] = tmp_path / f"{name}.json"
        write_field(paths[name], p)
    return paths


def test_dims_csv():
    code, out = run(["dims", "--n-max", "2", "--families", "2"])
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,r,predicted,observed,match"
    assert "2,4,5,5,true" in lines and len(lines) == 1 + 3 + 4


def test_dims_header_only():
    assert run(["dims", "--n-max", "0"]) == (0, "n,r,predicted,observed,match\n")


def test_dims_deterministic():
    a = run(["--seed", "5", "dims", "--n-max", "2", "--format", "json"])
    b = run(["--seed", "5", "dims", "--n-max", "2", "--format", "json"])
    assert a == b and json.loads(a[1])[0]["n"] == 1


def test_dims_mismatch_exit(monkeypatch, capsys):
    from harmquat import axial
    monkeypatch.setattr(axial, "predicted_span_dimension", lambda n, r: -1)
    code, _ = run(["dims", "--n-max", "1", "--families", "1"])
    assert code == 2
    assert "mismatch" in capsys.readouterr().err


def test_decompose_pi1_single_part(files, tmp_path):
    out = tmp_path / "cert.json"
    assert main(["decompose", str(files["pi1"]), "-o", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["residual_zero"] and len(cert["parts"]) == 1
    assert cert["parts"][0]["axis"] == ["0/1", "0/1", "1/1"]


def test_decompose_mixed(files):
    code, out = run(["decompose", str(files["mixed"])])
    cert = json.loads(out)
    assert code == 0 and cert["residual_zero"] and cert["parts_axial_harmonic"]
    assert len(cert["parts"]) >= 2


def test_decompose_uses_file_axes(tmp_path):
    path = tmp_path / "f.json"
    from harmquat.poly import Axis
    write_field(path, basis_quat_harmonic(1)[2], axes=[Axis((1, 1, 0)), Axis((0, 1, 1))])
    code, out = run(["decompose", str(path)])
    cert = json.loads(out)
    assert code == 0 and cert["residual_zero"]


def test_decompose_non_harmonic(files, capsys):
    assert main(["decompose", str(files["bad"])]) == 3
    err = capsys.readouterr().err
    assert "not harmonic" in err and "(1, 0, 0)" in err


def test_missing_and_malformed_files(tmp_path, capsys):
    assert main(["decompose", str(tmp_path / "none.json")]) == 4
    (tmp_path / "x.json").write_text('{"format_version": 9}')
    assert main(["verify", str(tmp_path / "x.json")]) == 4


def test_verify_pi2(files):
    code, out = run(["verify", str(files["pi2"])])
    rep = json.loads(out)
    assert code == 0 and rep["harmonic"] is True
    assert rep["axial_axes_found"] == [["1/1", "0/1", "0/1"]]


def test_verify_reports_violation(files):
    rep = json.loads(run(["verify", str(files["bad"])])[1])
    assert rep["harmonic"] is False and rep["grad_alpha_minus_rot_u"] == "(1, 0, 0)"


def test_density(files, tmp_path):
    out = tmp_path / "rep.json"
    code = main(["density", str(files["pi1"]), str(files["pert"]), "--points", "100",
                 "--radii", "2", "-o", str(out)])
    rep = json.loads(out.read_text())
    assert code == 0 and all(rep["certificates"].values())
    assert set(rep["error_estimate"]) >= {"sup_module", "component_norm"}


def test_characters_point():
    code, out = run(["characters", "--point", "1/2,-1/3,1/4"])
    rep = json.loads(out)
    assert code == 0 and rep["match"]
    assert rep["reconstructed_point"] == ["1/2", "-1/3", "1/4"]


def test_characters_outside(capsys):
    code, out = run(["characters", "--point", "2,0,0", "--format", "csv"])
    assert code == 3
    assert "outside closed unit ball" in capsys.readouterr().err
    assert out.splitlines()[0].startswith("power,")


def test_characters_values_file(tmp_path):
    path = tmp_path / "v.json"
    vals = {"format_version": 1, "values": [
        {"scalar": "1/2", "vec": ["0/1", "0/1", "-1/3"]},
        {"scalar": "-1/3", "vec": ["1/4", "0/1", "0/1"]},
        {"scalar": "1/4", "vec": ["0/1", "1/2", "0/1"]},
    ]}
    path.write_text(json.dumps(vals))
    code, out = run(["characters", "--values", str(path)])
    assert code == 0 and json.loads(out)["reconstructed_point"] == ["1/2", "-1/3", "1/4"]
    vals["values"][0]["scalar"] = "1/3"
    path.write_text(json.dumps(vals))
    assert run(["characters", "--values", str(path)])[0] == 2


def test_characters_bad_point():
    assert run(["characters", "--point", "1,2"])[0] == 4


def test_witness():
    code, out = run(["witness"])
    rep = json.loads(out)
    assert code == 0 and rep["div_u"] == "2*x3" and rep["pq_harmonic"] is False


def test_accept_subset():
    code, out = run(["accept", "--only", "identity", "module"])
    assert code == 0 and out.count("[PASS]") == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "harmquat", "witness", "--format", "csv"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.startswith("key,value")
