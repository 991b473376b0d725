import json
from fractions import Fraction as F

import pytest

from polyspan import (INF, ParseError, build_unknown_d, complex_to_json, gen_hypercube,
                      gen_tight_span, MetricInput, format_instance, parse_instance, preprocess)
from polyspan.cli import main

SQUARE = """# unit square
2 4
1 0 0
-1 0 -1
0 1 0
0 -1 -1
objective -1 -1
threshold -1/2
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def square_file(tmp_path):
    p = tmp_path / "square.poly"
    p.write_text(SQUARE)
    return str(p)


# parsing

def test_parse_square():
    spec = parse_instance(SQUARE)
    assert spec == gen_hypercube(2, 1)
    assert spec.threshold == F(-1, 2)


def test_parse_inf():
    assert parse_instance(SQUARE.replace("-1/2", "+inf")).threshold == INF


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("2\n", 1, 2),
    ("2 1\n1 x 0\nobjective 1 1\nthreshold inf\n", 2, 3),
    ("2 1\n1 0\nobjective 1 1\nthreshold inf\n", 2, 4),
    ("2 1\n1 0 0 5\nobjective 1 1\nthreshold inf\n", 2, 7),
    ("2 1\n0 0 1\nobjective 1 1\nthreshold inf\n", 2, 1),
    ("2 1\n1 0 0\nobj 1 1\nthreshold inf\n", 3, 1),
    ("2 1\n1 0 0\nobjective 1 1\nthreshold 1/0\n", 4, 11),
    ("2 1\n1 0 0\nobjective 1 1\n", 4, 1),
    ("2 1\n1 0 0\nobjective 1 1\nthreshold 1\nextra\n", 5, 1),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_cli_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.poly"
    p.write_text("2 1\n1 x 0\nobjective 1 1\nthreshold inf\n")
    code, _, err = run(capsys, "subcomplex", str(p))
    assert code == 2 and "line 2, column 3" in err


def test_cli_missing_file(capsys):
    code, _, err = run(capsys, "subcomplex", "/nonexistent/file.poly")
    assert code == 2 and err.startswith("error:")


def test_cli_empty_polyhedron(tmp_path, capsys):
    p = tmp_path / "empty.poly"
    p.write_text("1 2\n1 1\n-1 0\nobjective 1\nthreshold inf\n")
    code, _, err = run(capsys, "subcomplex", str(p))
    assert code == 1 and err.startswith("EmptyPolyhedron")


# JSON

def test_json_is_canonical():
    _, X = build_unknown_d(preprocess(gen_hypercube(2, 1)))
    data = json.loads(complex_to_json(X))
    assert [v["point"] for v in data["vertices"]] == [["0", "1"], ["1", "0"], ["1", "1"]]
    assert [(f["dim"], f["active"]) for f in data["faces"]] == \
        [(-1, [0, 1, 2, 3]), (0, [0, 3]), (0, [1, 2]), (0, [1, 3]), (1, [1]), (1, [3])]
    assert data["faces"][0]["ell_max"] is None
    assert data["d_max"] == 1 and data["euler_characteristic"] == 0


def test_cli_subcomplex(square_file, capsys):
    code, out, _ = run(capsys, "subcomplex", square_file)
    data = json.loads(out)
    assert code == 0 and len(data["vertices"]) == 3
    assert sum(f["dim"] == 1 for f in data["faces"]) == 2


def test_cli_subcomplex_known_d(square_file, capsys):
    _, a, _ = run(capsys, "subcomplex", square_file)
    _, b, _ = run(capsys, "subcomplex", "--d", "1", square_file)
    assert a == b


def test_cli_approx(square_file, capsys):
    _, out, _ = run(capsys, "subcomplex", "--approx", square_file)
    data = json.loads(out)
    assert data["vertices"][0]["point"] == ["0", "1"]
    assert data["vertices"][0]["point_approx"] == [0.0, 1.0]
    assert "approx_note" in data
    assert data["faces"][-1]["ell_max_approx"] == -1.0


def test_cli_general_position_bounds(square_file, capsys):
    code, _, err = run(capsys, "subcomplex", "--assume-general-position", square_file)
    assert code == 0 and err == ""


def test_cli_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(SQUARE))
    code, out, _ = run(capsys, "euler", "-")
    assert code == 0 and out == "0\n"


def test_cli_euler(square_file, capsys):
    assert run(capsys, "euler", square_file)[:2] == (0, "0\n")


def test_cli_vertices(square_file, capsys):
    code, out, _ = run(capsys, "vertices", square_file)
    data = json.loads(out)
    assert code == 0 and data["d"] == 2 and data["count"] == 3
    assert [v["ell"] for v in data["vertices"]] == ["-1", "-1", "-2"]


def test_cli_oracle_matches_subcomplex(square_file, capsys):
    _, a, _ = run(capsys, "subcomplex", square_file)
    _, b, _ = run(capsys, "oracle", square_file)
    assert a == b


def test_cli_check_tight_span(tmp_path, capsys):
    p = tmp_path / "tightspan_equilateral.poly"
    p.write_text(format_instance(gen_tight_span(MetricInput.uniform(3, 2))))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 0 and out == "ok: pipeline and oracle agree\n"


def test_cli_threads_identical(tmp_path, capsys):
    p = tmp_path / "cube.poly"
    p.write_text(format_instance(gen_hypercube(5, 2)))
    outs = {run(capsys, "subcomplex", "--threads", str(k), str(p))[1] for k in (1, 2, 4)}
    assert len(outs) == 1


# gen

def test_gen_hypercube(capsys):
    code, out, _ = run(capsys, "gen", "hypercube", "--dim", "2", "--d", "1")
    assert code == 0 and parse_instance(out) == gen_hypercube(2, 1)


def test_gen_fan2d_to_file(tmp_path, capsys):
    out = tmp_path / "fan.poly"
    assert run(capsys, "gen", "fan2d", "--slopes=-1,1", "--out", str(out))[0] == 0
    code, text, _ = run(capsys, "vertices", str(out))
    assert json.loads(text)["vertices"][0]["point"] == ["0", "-1"]


def test_gen_cone(tmp_path, capsys):
    base = tmp_path / "base.poly"
    base.write_text("2 4\n1 0 1\n0 1 1\n-1 0 -2\n0 -1 -2\nobjective 0 0\nthreshold inf\n")
    code, out, _ = run(capsys, "gen", "cone", "--base", str(base))
    assert code == 0 and parse_instance(out).dimension == 3


def test_gen_cone_unbounded_base(tmp_path, capsys):
    base = tmp_path / "base.poly"
    base.write_text("1 1\n1 0\nobjective 0\nthreshold inf\n")
    code, _, err = run(capsys, "gen", "cone", "--base", str(base))
    assert code == 1 and err.startswith("BaseUnbounded")


def test_gen_tightspan(tmp_path, capsys):
    m = tmp_path / "m.txt"
    m.write_text("3\n0 2 2\n2 0 2\n2 2 0\n")
    code, out, _ = run(capsys, "gen", "tightspan", "--matrix", str(m), "--with-nonneg")
    assert code == 0 and parse_instance(out) == gen_tight_span(MetricInput.uniform(3, 2))
    code, out, _ = run(capsys, "gen", "tightspan", "--matrix", str(m))
    assert parse_instance(out).n == 3


def test_gen_moment(capsys):
    code, out, _ = run(capsys, "gen", "moment", "--t", "0,1,2,3,4")
    assert code == 0 and parse_instance(out).n == 5


def test_gen_bad_slopes(capsys):
    code, _, err = run(capsys, "gen", "fan2d", "--slopes", "1,1")
    assert code == 2


def test_face_bounds_on_empty_complex(tmp_path, capsys):
    p = tmp_path / "halfplane.poly"
    p.write_text("2 1\n1 1 2\nobjective 1 1\nthreshold inf\n")
    code, out, _ = run(capsys, "subcomplex", "--assume-general-position", str(p))
    assert code == 0 and json.loads(out)["d_max"] == -1


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0 and out.rstrip().endswith("all expectations hold")
