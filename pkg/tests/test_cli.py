import json
import subprocess
import sys

import pytest

from hilbpts.cli import run
from hilbpts.groebner import Ideal
from hilbpts.poly import RingContext
from hilbpts.quotient import colength, support_points

M2_D3 = "ring x, y, z;\nideal x^2, x*y, y^2, x*z, y*z, z^2;\n"
LINE = "ring x, y;\nideal x;\n"
E2 = "# the curve x^2 y = 0\nring x, y;\nideal x^2*y;\n"
LITERAL = "ring x, y;\nparam alpha;\nideal y^2, x*y, y - alpha*x^2;\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("m2_d3", M2_D3), ("line", LINE), ("e2", E2), ("literal", LITERAL),
                       ("y", "ring x, y;\nideal y;\n"), ("x2", "ring x, y;\nideal x^2;\n"),
                       ("two", "ring x, y;\nideal x^2;\nideal y;\n"),
                       ("bad", "ring x, y;\nideal x + ;\n"),
                       ("sqrt2", "ring x;\nideal x^2 - 2;\n"),
                       ("pts", "ring x, y;\nideal x*(x - 1), y;\n")):
        p = tmp_path / f"{name}.ideal"
        p.write_text(text)
        out[name] = str(p)
    return out


def call(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_colength(files, capsys):
    assert call(capsys, "colength", files["m2_d3"]) == (0, "4\n", "")


def test_tangent(files, capsys):
    code, out, _ = call(capsys, "tangent", files["m2_d3"])
    assert (code, out) == (0, "dim = 18\n")


def test_not_zero_dimensional_exit_3(files, capsys):
    code, out, err = call(capsys, "colength", files["line"])
    assert code == 3 and "NotZeroDimensional" in err


def test_non_rational_support_exit_3(files, capsys):
    assert call(capsys, "support", files["sqrt2"])[0] == 3


def test_parse_error_exit_2(files, capsys):
    code, _, err = call(capsys, "gb", files["bad"])
    assert code == 2 and "position" in err


def test_usage_errors_exit_2(files, capsys):
    assert call(capsys, "colength")[0] == 2
    assert call(capsys, "frobnicate", files["m2_d3"])[0] == 2
    assert call(capsys, "colength", "/nonexistent/file.ideal")[0] == 2


def test_order_flag(files, capsys):
    assert call(capsys, "--order", "lex", "colength", files["m2_d3"])[0] == 0
    assert call(capsys, "colength", files["m2_d3"], "--order", "grevlex")[0] == 2


def test_json_is_stable(files, capsys):
    _, first, _ = call(capsys, "--json", "flat", files["literal"], "--with-zero")
    _, second, _ = call(capsys, "flat", files["literal"], "--with-zero", "--json")
    assert first == second
    doc = json.loads(first)
    assert doc["verdict"] == "SPECIAL_FIBER_DEGENERATE"
    assert doc["fibers"][6]["values"] == {"alpha": "1/2"}
    assert list(doc) == ["family", "parameters", "verdict", "generic_colength", "fibers"]


def test_json_error_document(files, capsys):
    code, out, _ = call(capsys, "--json", "colength", files["line"])
    assert code == 3
    assert json.loads(out)["error"]["type"] == "NotZeroDimensional"


def test_commands_match_library(files, capsys):
    I = Ideal.parse(RingContext(["x", "y"]), "x*(x - 1)", "y")
    _, out, _ = call(capsys, "--json", "colength", files["pts"])
    assert json.loads(out)["colength"] == colength(I)
    _, out, _ = call(capsys, "--json", "support", files["pts"])
    expected = [{"point": [str(c) for c in p], "multiplicity": m} for p, m in support_points(I)]
    assert json.loads(out)["points"] == expected


def test_gb_nf_stdmon(files, capsys):
    assert call(capsys, "gb", files["literal"])[0] == 2  # parameters are not allowed here
    tmp = files["e2"]
    assert call(capsys, "nf", tmp, "x^3*y + x") == (0, "x\n", "")
    assert call(capsys, "stdmon", files["m2_d3"])[1] == "1\nx\ny\nz\n"


def test_ideal_operations(files, capsys):
    assert call(capsys, "intersect", files["two"])[1] == "x^2*y\n"
    assert call(capsys, "intersect", files["x2"], files["y"])[1] == "x^2*y\n"
    assert call(capsys, "saturate", files["e2"], "--by", "y")[1] == "x^2\n"
    assert call(capsys, "radical", files["e2"])[1] == "x*y\n"
    assert call(capsys, "eliminate", files["m2_d3"], "--keep", "x")[1] == "x^2\n"
    out = call(capsys, "decompose", files["e2"])[1]
    assert out.splitlines() == ["(x^2)  radical (x)", "(y)  radical (y)"]
    assert call(capsys, "primary-test", files["e2"])[1] == "not primary\n"


def test_tangent_options(files, capsys):
    code, out, _ = call(capsys, "--json", "tangent", files["m2_d3"], "--oracle", "--basis")
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == doc["oracle_dim"] == 18 and len(doc["basis"]) == 18


def test_singular(files, capsys):
    assert call(capsys, "singular", files["m2_d3"])[1] == "singular (dim = 18, l*d = 12)\n"


def test_flat_limit_and_germ(files, capsys):
    assert call(capsys, "flat-limit", files["literal"])[1] == "y\nx^3\n"
    # the raw fiber at 0 is not zero-dimensional, so no germ exists
    assert call(capsys, "germ", files["literal"])[0] == 3


def test_flat_samples(files, capsys):
    _, out, _ = call(capsys, "--json", "flat", files["literal"], "--samples", "3")
    assert len(json.loads(out)["fibers"]) == 3


def test_smooth(files, capsys):
    code, out, _ = call(capsys, "--json", "smooth", files["m2_d3"])
    doc = json.loads(out)
    assert code == 0 and len(doc["steps"]) == 2
    assert [s["generic_colength"] for s in doc["steps"]] == [4, 4]
    assert [p["multiplicity"] for p in doc["terminal"]["points_at_1"]] == [1, 1, 1, 1]


def test_embed(tmp_path, capsys):
    p = tmp_path / "x3.ideal"
    p.write_text("ring x;\nideal x^3;\n")
    code, out, _ = call(capsys, "embed", str(p), "--l", "3")
    assert code == 0 and out == "ring x, y;\nideal x^3, y;\n"
    assert call(capsys, "embed", str(p), "--l", "2")[0] == 2


def test_split_off(capsys):
    code, out, _ = call(capsys, "--json", "split-off", "--l", "3", "--d", "3")
    doc = json.loads(out)
    assert code == 0
    assert [(q["point"], q["multiplicity"]) for q in doc["points"]] == [(["0", "0", "0"], 1), (["0", "0", "1"], 3)]


def test_certify(files, capsys, tmp_path):
    assert call(capsys, "certify", files["m2_d3"], "--catalog", "example1")[1].startswith("CERTIFIED")
    assert call(capsys, "certify", files["m2_d3"])[1].startswith("CERTIFIED")
    code, out, _ = call(capsys, "catalog", "example1")
    lines = out.splitlines()
    partial = tmp_path / "partial.ideal"
    partial.write_text("\n".join(lines[:-1]) + "\n")
    code, out, _ = call(capsys, "certify", files["m2_d3"], "--families", str(partial))
    assert code == 0 and out.startswith("INCONCLUSIVE (germ rank 17")
    code, _, _ = call(capsys, "certify", files["m2_d3"], "--families", str(partial), "--require-certified")
    assert code == 1


def test_catalog_roundtrip(capsys, tmp_path):
    _, out, _ = call(capsys, "catalog", "square", "--d", "2")
    p = tmp_path / "sq.ideal"
    p.write_text(out)
    q = tmp_path / "m2.ideal"
    q.write_text("ring x, y;\nideal x^2, x*y, y^2;\n")
    code, out, _ = call(capsys, "certify", str(q), "--families", str(p), "--require-certified")
    assert code == 0 and "germ rank 6" in out


def test_criterion(files, capsys):
    assert call(capsys, "criterion", files["y"], "--point", "0,0")[1] == "INTEGRAL (1 = 1)\n"
    assert call(capsys, "criterion", files["x2"], "--point", "0, 0")[1] == "NOT_INTEGRAL (2 != 1)\n"
    assert call(capsys, "criterion", files["x2"], "--point", "0,zero")[0] == 2


def test_worked_examples(capsys):
    code, out, _ = call(capsys, "worked-examples")
    assert code == 0 and out.splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out


def test_worked_examples_injected_failure(capsys):
    code, out, _ = call(capsys, "--json", "worked-examples", "--expect", "tangent_dim_m2_d3=17")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"]
    failed = [c["name"] for c in doc["checks"] if not c["pass"]]
    assert failed == ["tangent_dim_m2_d3"]


def test_worked_examples_unknown_check(capsys):
    assert call(capsys, "worked-examples", "--expect", "nope=1")[0] == 2


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "hilbpts", "colength", files["m2_d3"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "4\n"


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(M2_D3))
    assert call(capsys, "colength", "-") == (0, "4\n", "")


SAMPLES = __import__("pathlib").Path(__file__).resolve().parent.parent / "samples"


def test_sample_files(capsys):
    assert call(capsys, "colength", str(SAMPLES / "m2_d3.ideal"))[1] == "4\n"
    assert call(capsys, "flat-limit", str(SAMPLES / "smoothing_d2.family"))[1] == "y\nx^3\n"
    assert call(capsys, "support", str(SAMPLES / "two_points.ideal"))[0] == 0
    assert call(capsys, "criterion", str(SAMPLES / "x2.ideal"), "--point", "0,0")[0] == 0
    assert len(call(capsys, "decompose", str(SAMPLES / "x2y.ideal"))[1].splitlines()) == 2
