import json
import subprocess
import sys
from pathlib import Path

import pytest

from wgauss.cli import main
from wgauss.errors import SpecParseError
from wgauss.specs import CurveSpec, load_curve_spec, parse_curve_spec

CURVES = Path(__file__).resolve().parent.parent / "curves"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def test_shipped_specs_load():
    for path in sorted(CURVES.glob("*.json")):
        ci = load_curve_spec(path).build()
        assert ci.is_curve


def test_term_triples_and_strings_agree():
    a = parse_curve_spec({"n": 2, "degrees": [4], "forms": [[[1, 1, [4, 0, 0]], [-3, 2, [0, 2, 2]]]]})
    b = parse_curve_spec({"n": 2, "degrees": [4], "forms": ["X0^4 - 3/2*X1^2*X2^2"]})
    assert a.forms == b.forms
    assert parse_curve_spec(a.to_dict()).forms == a.forms


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"degrees": [2]}, "spec.n"),
        ({"n": 2, "degrees": []}, "spec.degrees"),
        ({"n": 2, "degrees": [1]}, "spec.degrees"),
        ({"n": 2, "degrees": [2, 2, 2]}, "spec.degrees"),
        ({"n": 2, "degrees": [2], "forms": "cubic"}, "spec.forms"),
        ({"n": 2, "degrees": [2], "forms": ["X0^3"]}, "spec.forms[0]"),
        ({"n": 2, "degrees": [2], "forms": [[[1, 0, [2, 0, 0]]]]}, "spec.forms[0].terms[0]"),
        ({"n": 2, "degrees": [2], "forms": [[[1, 1, [2, 0]]]]}, "spec.forms[0].terms[0]"),
        ({"n": 2, "degrees": [2], "seed": "x"}, "spec.seed"),
    ],
)
def test_parse_errors_name_the_field(doc, field):
    with pytest.raises(SpecParseError) as info:
        parse_curve_spec(doc)
    assert str(info.value).startswith(field)


def test_json_syntax_error_reports_position(tmp_path):
    path = write_spec(tmp_path, '{"n": 2,\n "degrees": [6,]}')
    with pytest.raises(SpecParseError, match="line 2 column"):
        load_curve_spec(path)


def test_hilbert_table(capsys):
    code, out, _ = run(capsys, "hilbert", "--spec", CURVES / "sextic.json", "--from", 0, "--to", 8)
    assert code == 0
    row = [line.split() for line in out.splitlines() if line.split()[:1] == ["6"]][0]
    assert row == ["6", "27", "27", "yes"]
    code, out, _ = run(capsys, "hilbert", "--spec", CURVES / "elliptic_quartic.json", "--to", 4, "--csv")
    assert "2,8,8,True" in out.splitlines()
    code, out, _ = run(capsys, "hilbert", "--preset", "sextic", "--from", 3, "--to", 2, "--json")
    assert code == 0 and json.loads(out)["rows"] == []


def test_gauss_pn_json(capsys):
    code, out, _ = run(capsys, "gauss", "--pn", 2, "-e", 1, "-a", 1, "-b", 2, "--json")
    report = json.loads(out)
    assert code == 0
    assert (report["rank"], report["surjective"]) == (8, True)


def test_gauss_curve(capsys):
    code, out, err = run(capsys, "gauss", "--spec", CURVES / "sextic.json", "-e", 1, "-a", 1, "-b", 2)
    assert code == 0
    fields = dict(line.split(None, 1) for line in out.splitlines())
    assert (fields["rank"], fields["coker_dim"]) == ("8", "19")
    assert "note:" in err
    _, _, err = run(capsys, "gauss", "--preset", "sextic", "-a", 1, "-b", 2, "--allow-lower-bound")
    assert err == ""


def test_gauss_diagonal_columns_vanish(capsys):
    code, out, _ = run(capsys, "gauss", "--spec", CURVES / "sextic.json", "-e", 1, "-a", 3, "-b", 3, "--json", "--dump-matrix")
    report = json.loads(out)
    k = round(report["domain_dim"] ** 0.5)
    assert k * k == report["domain_dim"]
    used = {j for _, j, _ in report["matrix"]}
    assert all(i * k + i not in used for i in range(k))


def test_tangent(capsys):
    code, out, _ = run(capsys, "tangent", "--spec", CURVES / "sextic.json", "--h", 3)
    assert code == 0 and "tangent_dim       19" in out and "PASS" in out
    code, out, _ = run(capsys, "tangent", "--spec", CURVES / "quintic.json", "--h", 2, "--json")
    assert code == 0 and json.loads(out)["computed"]["coker_mu"] == 12
    code, _, err = run(capsys, "tangent", "--spec", CURVES / "sextic.json", "--h", 2)
    assert code == 4 and "does not divide" in err


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "theorem34", "--g", 10, "--h", 3, "--json")
    results = json.loads(out)
    assert code == 0
    assert [(r["verdict"], r["computed"]["codim"]) for r in results] == [("PASS", "3")]
    code, out, _ = run(capsys, "verify", "lemma1", "--n", 2, "--e", 1, "--max-t", 5)
    assert code == 0 and "10 checks, 0 failed" in out


def test_exit_codes(capsys, tmp_path):
    bad = write_spec(tmp_path, {"n": 2, "degrees": [6], "forms": "nope"})
    assert run(capsys, "hilbert", "--spec", bad)[0] == 2
    missing = tmp_path / "missing.json"
    assert run(capsys, "gauss", "--spec", missing, "-a", 1, "-b", 1)[0] == 2
    # X0^2 and X0*X1 share a factor, so they are not a regular sequence
    broken = write_spec(tmp_path, {"n": 2, "degrees": [2, 2], "forms": ["X0^2", "X0*X1"]}, "broken.json")
    code, _, err = run(capsys, "hilbert", "--spec", broken, "--to", 4)
    assert code == 3 and "degree 3" in err
    assert run(capsys, "gauss", "--pn", 2, "-a", 0, "-b", 1)[0] == 4


def test_spec_seed_override(capsys, tmp_path):
    spec = write_spec(tmp_path, {"n": 4, "degrees": [2, 2, 2], "forms": "random", "seed": 1})
    _, out1, _ = run(capsys, "hilbert", "--spec", spec, "--to", 3, "--csv")
    _, out2, _ = run(capsys, "hilbert", "--spec", spec, "--to", 3, "--csv", "--seed", 9)
    assert out1 == out2  # generic forms share the Hilbert function
    assert CurveSpec(4, (2, 2, 2), "random", 9).build().forms != CurveSpec(4, (2, 2, 2), "random", 1).build().forms


def test_byte_identical_reruns():
    argv = [sys.executable, "-m", "wgauss", "gauss", "--preset", "elliptic-quartic", "-a", 1, "-b", 2, "--json", "--dump-matrix"]
    runs = [subprocess.run([str(a) for a in argv], capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
    argv = [sys.executable, "-m", "wgauss", "verify", "kernel-bound", "--json"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
