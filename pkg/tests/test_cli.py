import json

import pytest

from ambitoric.cli import main

from conftest import make_spec
from ambitoric import Quadratic


@pytest.fixture
def spec_file(tmp_path, hyperbolic_spec):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(hyperbolic_spec.to_dict()))
    return str(p)


def test_validate_command(spec_file, capsys):
    assert main(["validate", spec_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["conic_type"] == "Hyperbolic"
    assert out["components"] == [{"sign_xy": 1, "sign_q": 1}]


def test_eval_command(spec_file, capsys):
    assert main(["eval", spec_file, "--at", "2.5,-0.5", "--field", "g0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["g0"]) == 4


def test_classify_exit_codes(spec_file, tmp_path, capsys):
    assert main(["classify", spec_file, "--no-numeric"]) == 0
    capsys.readouterr()
    bad = make_spec(Quadratic(0, 1, 0), [-2, 3, -1], [0, -3, -1],
                    (1, 2), (-3, 0))
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad.to_dict()))
    assert main(["classify", str(p), "--no-numeric"]) == 1
    capsys.readouterr()


def test_input_error_exit_code(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert main(["validate", str(p)]) == 2
    capsys.readouterr()


def test_moment_outputs_stable(spec_file, tmp_path, capsys):
    csv1 = tmp_path / "a.csv"
    svg1 = tmp_path / "a.svg"
    csv2 = tmp_path / "b.csv"
    svg2 = tmp_path / "b.svg"
    for csv, svg in ((csv1, svg1), (csv2, svg2)):
        assert main(["moment", spec_file, "--sign", "-", "--grid", "8",
                     "--csv", str(csv), "--svg", str(svg)]) == 0
        capsys.readouterr()
    assert csv1.read_bytes() == csv2.read_bytes()
    assert svg1.read_bytes() == svg2.read_bytes()
    header = csv1.read_text().splitlines()[0]
    assert header == "x,y,mu1,mu2"


def test_kerr_and_examples(tmp_path, capsys):
    out = tmp_path / "kerr.json"
    assert main(["kerr", "--mass", "1", "--alpha", "3/4",
                 "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["q"] == ["0", "1", "0"]
    assert main(["examples", "cp2"]) == 0
    got = json.loads(capsys.readouterr().out)
    assert len(got["vertices"]) == 3
    assert main(["examples", "hirzebruch:3"]) == 0
    capsys.readouterr()


def test_gauge_roundtrip_bytes(spec_file, tmp_path, capsys):
    g1 = tmp_path / "g1.json"
    g2 = tmp_path / "g2.json"
    base = tmp_path / "base.json"
    # normalize through the serializer first
    assert main(["gauge", spec_file, "--mobius", "1,0,0,1",
                 "--out", str(base)]) == 0
    assert main(["gauge", str(base), "--mobius", "1,1,0,1",
                 "--out", str(g1)]) == 0
    assert main(["gauge", str(g1), "--mobius=1,-1,0,1",
                 "--out", str(g2)]) == 0
    assert base.read_bytes() == g2.read_bytes()


def test_check_command(spec_file, capsys):
    assert main(["check", spec_file, "--grid", "6"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["failed"] == 0 and out["passed"] > 0


def test_csc_gen_command(tmp_path, capsys):
    data = {"q": ["0", "1", "0"], "p": ["1", "0", "-4"],
            "rho": ["1", "1", "4"], "R": ["1", "4", "0", "1", "1"]}
    p = tmp_path / "data.json"
    p.write_text(json.dumps(data))
    assert main(["csc-gen", str(p)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["report"]["csc"] is True
    assert out["report"]["einstein"] is False
