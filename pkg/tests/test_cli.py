import io
import json
import re

import jsonschema
import numpy as np
import pytest

from poncelet import cli, opuc, popuc

SCHEMA = cli.load_schema()


def run(argv, tmp_path=None):
    out = io.StringIO()
    code = cli.run(argv, stdout=out)
    return code, out.getvalue()


def run_json(argv):
    code, text = run(argv)
    assert code == 0, text
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return doc["result"]


def cplx(v):
    return complex(v[0], v[1])


def fmt(zs):
    return ",".join("%.17g%+.17gi" % (z.real, z.imag) for z in zs)


@pytest.mark.parametrize(
    "tok, val",
    [
        ("0.5", 0.5),
        ("-i", -1j),
        ("i", 1j),
        ("2i", 2j),
        ("0.3-0.2i", 0.3 - 0.2j),
        ("i/3", 1j / 3),
        ("1/2", 0.5),
        ("1E-3", 1e-3),
        ("-0.74949+0.164697i", -0.74949 + 0.164697j),
        ("0.8e34i", 0.8 * np.exp(34j)),
        ("0.57e4i", 0.57 * np.exp(4j)),
        ([0.1, -0.2], 0.1 - 0.2j),
    ],
)
def test_parse_complex(tok, val):
    assert abs(cli.parse_complex(tok) - val) < 1e-15


def test_parse_complex_bad():
    with pytest.raises(cli.InputError):
        cli.parse_complex("abc")


def test_popuc_zeros_example():
    r = run_json(["popuc-zeros", "--alphas", "0,0", "--lambda", "1"])
    zeros = [cplx(v) for v in r["frame"]["zeros"]]
    assert np.allclose(zeros, np.exp(2j * np.pi * np.arange(3) / 3), atol=1e-14)
    assert np.allclose(r["frame"]["weights"], 1 / 3)


def test_wendroff2_example():
    w = opuc.VerblunskyWord((0.5, 1j / 3))
    a = popuc.popuc_zeros(w, 1).zeros
    b = popuc.popuc_zeros(w, 1j).zeros
    r = run_json(["wendroff2", "--first", fmt(a), "--second", fmt(b)])
    got = [cplx(v) for v in r["word"]["alphas"]]
    assert np.allclose(got, [0.5, 1j / 3], atol=1e-8)


@pytest.mark.parametrize(
    "argv",
    [
        ["opuc", "--alphas", "0.5,i/3", "--lambda", "1"],
        ["opuc", "--alphas", "0.5", "--second-kind"],
        ["popuc-zeros", "--alphas", "0.2,-0.3i", "--lambda", "i"],
        ["weights", "--alphas", "0.2,-0.3i,0.1+0.1i", "--lambda", "-1"],
        ["mfunction", "--alphas", "0.2,-0.3i", "--lambda", "1", "--z", "2,0.5i"],
        ["numrange", "--alphas", "0.2,-0.3i", "--lambdas", "32", "--check"],
        ["polygons", "--alphas", "0.2,-0.3i", "--lambdas", "4"],
        ["chords", "--alphas", "0.2,-0.3i", "--lambdas", "4"],
        ["contraction-invert", "--matrix", "0,0;1,0"],
        ["critical", "--points", "0,0"],
        ["critical", "--points", "0.5,-0.5"],
        ["billiard", "--foci", "0,0", "--semimajor", "0.5", "--steps", "3"],
        ["billiard", "--foci", "0.1,-0.2i", "--steps", "3"],
        ["billiard", "--alphas", "0.2,-0.3i", "--steps", "3", "--lambdas", "64"],
        ["wendroff-second-kind", "--first", "1,1e2.0943951023931957i,1e4.1887902047863905i", "--second", "-1,0.5+0.8660254037844386i,0.5-0.8660254037844386i"],
    ],
)
def test_commands_validate_and_are_deterministic(argv):
    c1, t1 = run(argv)
    c2, t2 = run(argv)
    assert c1 == 0, t1
    assert t1 == t2
    jsonschema.validate(json.loads(t1), SCHEMA)
    c3, csv1 = run(argv + ["--format", "csv"])
    assert c3 == 0
    lines = csv1.strip().split("\n")
    assert len(lines) >= 2 and "," in lines[0] and not re.match(r"^-?\d", lines[0])


def test_negative_values_after_flags():
    r = run_json(["critical", "--points", "-0.5,0.5"])
    assert r["report"]["feasible"] is False


def test_float_format():
    text = cli.dumps({"x": 0.1, "z": 1 / 3 + 2j})
    assert "0.10000000000000001" in text and "0.33333333333333331" in text


def test_exit_codes(capsys):
    assert cli.run(["popuc-zeros", "--alphas", "2", "--lambda", "1"], stdout=io.StringIO()) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["exit_code"] == 2 and err["error"]
    assert cli.run(["popuc-zeros", "--alphas", "0.1"], stdout=io.StringIO()) == 2
    assert cli.run(["nonsense"], stdout=io.StringIO()) == 2
    assert cli.run(["--tol", "-1", "critical", "--points", "0"], stdout=io.StringIO()) == 2
    # a solver-side failure: impossible tolerance on the weight cross-check
    assert cli.run(["weights", "--alphas", "0.5,0.3i", "--lambda", "1", "--tol", "1e-300"], stdout=io.StringIO()) == 3
    capsys.readouterr()


def test_input_file(tmp_path):
    p = tmp_path / "in.json"
    p.write_text(json.dumps({"alphas": [[0, 0], [0, 0]], "lambda": [1, 0]}))
    r = run_json(["popuc-zeros", "--input", str(p)])
    assert np.allclose(r["frame"]["weights"], 1 / 3)


def test_out_file(tmp_path):
    out = tmp_path / "o.csv"
    assert cli.run(["polygons", "--alphas", "0,0", "--lambdas", "2", "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().startswith("polygon,vertex,re,im\n")


def test_figure(tmp_path):
    prefix = str(tmp_path / "fig")
    r = run_json(["figure", "--eigs", "0.8e34i,0.57e4i,0.7i", "--lambdas", "16", "--prefix", prefix])
    for path in r["svg"]:
        text = open(path).read()
        assert 'width="800" height="800"' in text
        assert '<circle cx="400.000" cy="400.000" r="350.000"' in text
    assert len(r["frames"]) == 16
