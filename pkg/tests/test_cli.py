import csv
import io
import xml.etree.ElementTree as ET

import pytest

from wassign import cli
from wassign.instances import loads


@pytest.fixture
def files(tmp_path):
    def make(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


TWO_POINT = "2 1\n0 0\n4 0\n0.5\n"
EQUILATERAL = "3 1\n0 0\n1.7320508075688772 0\n0.8660254037844386 1.5\n1\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_two_point(files, capsys):
    path = files("a.txt", TWO_POINT)
    code, out, _ = run(capsys, "solve", path, "--algo", "exact")
    assert code == 0
    assert "radius: 2.66666666667" in out


def test_exact_and_parametric_agree(files, capsys):
    path = files("a.txt", "5 2\n0 0\n3 1\n1 4\n2 2\n5 3\n0.5\n1.7\n")
    lines = {}
    for algo in ("exact", "parametric"):
        code, out, _ = run(capsys, "solve", path, "--algo", algo)
        assert code == 0
        lines[algo] = out.splitlines()[0]
    assert lines["exact"] == lines["parametric"]


def test_machine_output(files, capsys):
    path = files("a.txt", TWO_POINT)
    code, out, _ = run(capsys, "solve", path, "--algo", "parametric", "--machine")
    fields = dict(line.split(" ", 1) for line in out.splitlines())
    assert float(fields["radius"]) == pytest.approx(8 / 3)
    assert fields["algo"] == "parametric" and int(fields["oracle_calls"]) > 0


def test_malformed_file(files, capsys):
    path = files("bad.txt", "2 1\n0 0\n4 zz\n0.5\n")
    code, _, err = run(capsys, "solve", path)
    assert code == 2
    assert "line 3" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "solve", str(tmp_path / "none.txt"))
    assert code == 2


def test_smallk_precondition(files, capsys):
    path = files("a.txt", "2 1\n0 0\n4 0\n1.5\n")
    code, _, err = run(capsys, "solve", path, "--algo", "smallk")
    assert code == 3
    assert "weights" in err


def test_auto_picks_smallk(files, capsys):
    pts = "".join(f"{i} {i * i % 7}\n" for i in range(9))
    path = files("a.txt", f"9 2\n{pts}0.5\n0.25\n")
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and "algo: smallk" in out


def test_decide(files, capsys):
    path = files("e.txt", EQUILATERAL)
    code, out, _ = run(capsys, "decide", path, "--r", "1.0")
    assert code == 0 and out.startswith("feasible")
    code, out, _ = run(capsys, "decide", path, "--r", "0.99")
    assert code == 1 and out.startswith("infeasible")


def test_decide_rejects_nonpositive(files, capsys):
    path = files("e.txt", EQUILATERAL)
    code, _, _ = run(capsys, "decide", path, "--r", "0")
    assert code == 3


def test_gen_round_trip(capsys, tmp_path):
    out_path = tmp_path / "g.txt"
    code, out, _ = run(capsys, "gen", "--n", "6", "--k", "2", "--seed", "5", "--out", str(out_path))
    assert code == 0 and out == ""
    inst = loads(out_path.read_text())
    assert inst.n == 6 and inst.k == 2
    code, out, _ = run(capsys, "gen", "--kind", "lower-bound", "--n", "8", "--k", "2")
    assert loads(out).weights == (0.4375, 0.375)


def test_gen_invalid(capsys):
    code, _, _ = run(capsys, "gen", "--n", "2", "--k", "3")
    assert code == 2


def test_oracle(files, capsys):
    path = files("a.txt", TWO_POINT)
    code, out, _ = run(capsys, "oracle", path)
    assert code == 0 and "radius: 2.66666666667" in out
    assert "assignment: 0.5 1" in out


def test_oracle_too_large(files, capsys):
    pts = "".join(f"{i} 0\n" for i in range(12))
    ws = "".join(f"0.{i}\n" for i in range(1, 8))
    path = files("big.txt", f"12 7\n{pts}{ws}")
    code, _, err = run(capsys, "oracle", path)
    assert code == 3 and "oracle scale exceeded" in err


def test_count_centers(files, capsys):
    path = files("a.txt", TWO_POINT)
    code, out, _ = run(capsys, "count-centers", path)
    assert code == 0 and out.strip() == "2"


def test_render(files, capsys):
    path = files("a.txt", TWO_POINT)
    code, out, _ = run(capsys, "render", path, "--r", "3", "--solution")
    assert code == 0
    root = ET.fromstring(out)
    assert root.tag.endswith("svg")


def test_bench_header(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "10,20", "--repeat", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "k", "algo", "ms", "oracle_calls"]
    assert [r[0] for r in rows[1:]] == ["10", "20"]
    assert all(float(r[3]) >= 0 for r in rows[1:])


def test_bench_solvers(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "8", "--algos", "exact,parametric", "--repeat", "1")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert [r[2] for r in rows] == ["exact", "parametric"]
    assert int(rows[1][4]) > 0


def test_self_check_failure(files, capsys, monkeypatch):
    from wassign.wcenter import SolveResult
    from wassign.geom import Point

    path = files("a.txt", TWO_POINT)
    monkeypatch.setattr(cli, "solve_exact", lambda inst: SolveResult((0.5, 1.0), Point(0, 0), 1.0, (0,)))
    code, _, err = run(capsys, "solve", path, "--algo", "exact")
    assert code == 4 and "self-check" in err
