import json

import pytest

from conicbundle.cli import main
from conicbundle.determinantal import SymmetricMatrixRep, build_cubic
from conicbundle.geometry import ProjLine, ProjPoint, contains_line
from conicbundle.pipeline import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    VERIFIED,
    check_characteristic,
    matrix_from_cubic,
    random_smooth_matrix,
    run_pipeline,
)
from conicbundle.poly_core import GF, QQ
from conicbundle.textio import parse_matrix_file, parse_poly

DIAGONAL = "l1: x\nl2: 0\nl3: z\nq1: 0\nq2: 0\nf: x^3 + y^3 + z^3\n"
# t never occurs in the cubic, which is a cone with apex (0:0:0:0:1) over a smooth surface
PLANTED = "l1: x\nl2: 0\nl3: 0\nq1: y^2\nq2: 0\nf: x^3 + y^3 + z^3\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_and_extract_round_trip(capsys, write):
    m = write("m.txt", "l1: x\nl2: y\nl3: z\nq1: z^2\nq2: x^2\nf: y^3\n")
    code, out, _ = run(capsys, "build-cubic", m)
    assert code == EXIT_OK
    assert parse_poly(out, ("x", "y", "z", "w", "t")) == parse_poly(
        "x*w^2 + 2*y*w*t + z*t^2 + 2*z^2*w + 2*x^2*t + y^3", ("x", "y", "z", "w", "t")
    )
    cubic = write("c.txt", out)
    code, out, _ = run(capsys, "extract-matrix", cubic)
    assert code == EXIT_OK
    assert parse_matrix_file(out) == parse_matrix_file(open(m).read())


def test_extract_matrix_along_a_line(capsys, write):
    c = write("fermat.txt", "x^3 + y^3 + z^3 + w^3 + t^3")
    code, out, _ = run(capsys, "extract-matrix", c, "--line", "1,-1,0,0,0;0,0,1,-1,0")
    assert code == EXIT_OK
    A = parse_matrix_file(out)
    assert contains_line(build_cubic(A).F, ProjLine.standard(QQ))
    code, _, err = run(capsys, "extract-matrix", c)
    assert code == EXIT_VIOLATION
    assert "does not vanish" in err


def test_discriminant_and_conic(capsys, write):
    m = write("d.txt", DIAGONAL)
    code, out, _ = run(capsys, "discriminant", m)
    assert code == EXIT_OK
    assert out.splitlines() == ["x^4*z + x*y^3*z + x*z^4", "det identity: holds"]
    code, out, _ = run(capsys, "conic", m)
    assert out.splitlines() == ["x*z", "conic is singular"]


def test_singular_locus_and_nodes(capsys, write):
    c = write("cone.txt", "x^3 + y^3 + z^3 + w^3")
    code, out, _ = run(capsys, "singular-locus", c, "--ambient", "space", "--field", "fp:7", "--ext-depth", "1")
    assert code == EXIT_OK
    assert out.strip() == "(0 : 0 : 0 : 0 : 1)  (degree 1)"
    n = write("node.txt", "x*y*z + x^3")
    assert run(capsys, "check-nodal", n, "--point", "0,0,1")[0] == EXIT_OK
    cusp = write("cusp.txt", "y^2*z - x^3")
    assert run(capsys, "check-nodal", cusp, "--point", "0,0,1")[0] == EXIT_VIOLATION
    code, _, err = run(capsys, "check-nodal", n, "--point", "1,1,1")
    assert code == EXIT_USAGE and "not on the curve" in err


def test_check_smooth(capsys, write):
    cone = write("cone.txt", "x^3 + y^3 + z^3 + w^3")
    code, out, _ = run(capsys, "check-smooth", cone, "--field", "fp:7")
    assert code == EXIT_VIOLATION and "(0 : 0 : 0 : 0 : 1)" in out
    fermat = write("fermat.txt", "x^3 + y^3 + z^3 + w^3 + t^3")
    code, out, _ = run(capsys, "check-smooth", fermat, "--field", "fp:7", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "no-singular-point-up-to-degree"


def test_check_contact(capsys, write):
    assert run(capsys, "check-contact", write("d.txt", DIAGONAL))[0] == EXIT_INCONCLUSIVE


def test_pipeline_diagonal_flags_reducible(capsys, write):
    code, out, _ = run(capsys, "pipeline", write("d.txt", DIAGONAL), "--json")
    report = json.loads(out)
    assert code == EXIT_INCONCLUSIVE
    assert any("linear factors x, z" in r for r in report["reducible"])
    assert report["contact"] == {"common_component": True}


def test_pipeline_planted_singular(capsys, write):
    code, out, _ = run(capsys, "pipeline", write("p.txt", PLANTED), "--field", "fp:11", "--json")
    report = json.loads(out)
    assert code == EXIT_VIOLATION
    assert report["smoothness"]["point"]["coords"] == ["0", "0", "0", "0", "1"]
    assert any("singular at (0 : 0 : 0 : 0 : 1)" in v for v in report["violations"])


def test_pipeline_random_smooth(capsys):
    code, out, _ = run(capsys, "pipeline", "--random", "--seed", "0", "--json")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["verdict"] == VERIFIED
    assert report["contact"]["total"] == 10
    assert all(p["even"] for p in report["contact"]["points"])


def test_pipeline_from_cubic_and_line(capsys, write):
    A, _ = random_smooth_matrix(11, seed=3)
    F = build_cubic(A).F
    c = write("c.txt", str(F))
    code, out, _ = run(capsys, "pipeline", "--cubic", c, "--field", "fp:11", "--line", "0,0,0,1,0;0,0,0,0,1")
    assert code in (EXIT_OK, EXIT_INCONCLUSIVE)
    assert "violation" not in out


def test_reports_are_deterministic(capsys, write):
    m = write("d.txt", DIAGONAL)
    first = run(capsys, "pipeline", m, "--json")[1]
    second = run(capsys, "pipeline", m, "--json", "--workers", "3")[1]
    assert first == second


@pytest.mark.parametrize(
    "text, where",
    [
        ("l1: x +\nl2: 0\nl3: 0\nq1: 0\nq2: 0\nf: 0\n", ":1:8:"),
        ("l1: x\nl2: 0\nl3: 0\nq1: 0\nq2: y^^2\nf: 0\n", ":5:7:"),
        ("l1: x\nl2: w\nl3: 0\nq1: 0\nq2: 0\nf: 0\n", ":2:5:"),
    ],
)
def test_malformed_input_exit_2(capsys, write, text, where):
    code, _, err = run(capsys, "build-cubic", write("bad.txt", text))
    assert code == EXIT_USAGE
    assert where in err
    assert "^" in err


def test_usage_errors(capsys, write):
    with pytest.raises(SystemExit) as info:
        main(["pipeline", "--ext-depth", "7"])
    assert info.value.code == EXIT_USAGE
    code, _, err = run(capsys, "check-smooth", write("c.txt", "x^3"), "--field", "fp:3")
    assert code == EXIT_USAGE and "allow-small-char" in err
    assert run(capsys, "build-cubic", "/nonexistent/file")[0] == EXIT_USAGE
    assert run(capsys, "pipeline")[0] == EXIT_USAGE


def test_small_characteristic_override(capsys, write):
    code, _, err = run(capsys, "check-smooth", write("c.txt", "x^3 + y^3"), "--field", "fp:5",
                       "--allow-small-char", "--ext-depth", "1")
    assert code == EXIT_VIOLATION
    assert "warning" in err
    with pytest.raises(ValueError):
        check_characteristic(2)


def test_cover_check(capsys, write):
    g6 = write("g6.json", json.dumps({"components": [{"id": 0, "genus": 6}], "edges": []}))
    code, out, _ = run(capsys, "cover-check", g6, "--genus", "6")
    assert code == EXIT_OK
    assert "deg = 10" in out
    g2 = write("g2.json", json.dumps({"components": [{"id": 0, "genus": 2}, {"id": 1, "genus": 3}],
                                      "edges": [[0, 1], [0, 1]]}))
    code, out, _ = run(capsys, "cover-check", g2)
    assert code == EXIT_VIOLATION and "crossing < 4" in out
    code, _, err = run(capsys, "cover-check", write("bad.json", '{"components": ['))
    assert code == EXIT_USAGE and "bad.json:1:" in err
    disc = write("disc.json", json.dumps({"components": [{"id": 0, "genus": 1}, {"id": 1, "genus": 1}],
                                          "edges": []}))
    assert run(capsys, "cover-check", disc)[0] == EXIT_USAGE


def test_run_pipeline_api():
    A, draws = random_smooth_matrix(11, seed=0)
    assert draws >= 1
    report = run_pipeline(A)
    assert report.exit_code == EXIT_OK
    assert report.resolution == (1, 0)
    with pytest.raises(ValueError):
        run_pipeline(SymmetricMatrixRep.from_strings(QQ, l1="x"))
    with pytest.raises(ValueError):
        run_pipeline(A, k_max=4)


def test_matrix_from_cubic_rejects_missing_line():
    F = parse_poly("x^3 + y^3 + z^3 + w^3 + t^3", ("x", "y", "z", "w", "t"), GF(7))
    K = GF(7)
    bad = ProjLine(ProjPoint.from_values(K, (1, 0, 0, 0, 0)), ProjPoint.from_values(K, (0, 1, 0, 0, 0)))
    with pytest.raises(ValueError):
        matrix_from_cubic(F, bad)
