import io
import subprocess
import sys

import pytest

from idcodes import cli


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def c7(tmp_path):
    path = tmp_path / "c7.txt"
    code, text = run("gen", "cycle", 7)
    assert code == 0
    path.write_text(text)
    return path


def test_gen_output_is_golden():
    assert run("gen", "cycle", 4) == (0, "p graph 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n")


def test_gen_random_is_seeded():
    a = run("gen", "random", 12, 30, "--seed", 5)
    b = run("gen", "random", 12, 30, "--seed", 5)
    assert a == b and a[0] == 0


def test_solve_golden(c7):
    code, text = run("solve", "-r", 2, c7)
    assert code == 0
    assert text == ("optimum=4\ncertificate=1 2 4 5\nlower_bound=3\n"
                    "lower_bound_used=search\nnodes=12\n")
    assert run("solve", "-r", 2, c7) == (code, text)


def test_solve_count_and_human(c7):
    code, text = run("solve", "--count", "--human", c7)
    assert code == 0 and "optimum: " in text and "count: " in text


def test_solve_twins_exit_one(tmp_path):
    path = tmp_path / "k3.txt"
    path.write_text(run("gen", "complete", 3)[1])
    assert run("solve", path) == (1, "twins=1 2\n")


def test_solve_budget_exit_three(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(run("gen", "g-series", 1)[1])
    code, text = run("solve", "--budget-nodes", 3, path)
    assert code == 3 and "status=budget-exceeded" in text


def test_soc_count(tmp_path):
    path = tmp_path / "q3.txt"
    path.write_text(run("gen", "hypercube", 3)[1])
    code, text = run("solve", "--class", "soc", "--count", path)
    assert code == 0 and "optimum=3\n" in text and "count=32\n" in text


def test_verify(c7, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 2 4 5\n")
    empty = tmp_path / "empty.txt"
    empty.write_text("\n")
    assert run("verify", "idc", "-r", 2, c7, good) == (0, "valid=true\n")
    code, text = run("verify", "idc", c7, empty)
    assert code == 1 and text == "valid=false\nviolation=undominated\nwitness=1\n"


def test_usage_errors(c7):
    assert run("frobnicate")[0] == 2
    assert run("solve", "-r", 0, c7)[0] == 2
    assert run("solve", "/nonexistent/graph.txt")[0] == 2
    assert run("gen", "cycle", "x")[0] == 2
    assert run("hamming", "bounds")[0] == 2
    assert run("grid", "search", "--kind", "square")[0] == 2


def test_malformed_graph_is_usage_error(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("p graph 2 1\ne 1 3\n")
    assert run("solve", path)[0] == 2


def test_hamming_bounds_golden():
    code, text = run("hamming", "bounds", "--n", 5)
    assert code == 0
    assert text.splitlines()[-2:] == ["best=10", "known=10"]


def test_hamming_files(tmp_path):
    whole = tmp_path / "f3.txt"
    whole.write_text("".join(format(w, "03b") + "\n" for w in range(8)))
    assert run("hamming", "verify", "--mu", 2, whole) == (0, "valid=true\nsize=8\n")
    assert run("hamming", "verify", "--ell", 2, whole)[0] == 1
    code, text = run("hamming", "construct-pi", whole)
    assert code == 0 and len(text.split()) == 64 and len(text.split()[0]) == 7
    code, text = run("hamming", "direct-sum", whole, whole)
    assert code == 0 and len(text.split()) == 64
    assert run("hamming", "covradius", "--n", 3, "--k", 2) == (0, "covering_radius=1\n")
    assert run("hamming", "verify")[0] == 2


def test_grid_commands(tmp_path):
    code, text = run("grid", "search", "--kind", "square", "--det", 20, "--count", 7)
    assert code == 0 and text.endswith("found=true\ndensity=7/20\n")
    tile = tmp_path / "t.txt"
    tile.write_text(text.split("found=")[0])
    code, text = run("grid", "verify", tile)
    assert code == 0 and text.startswith("valid=true\ndensity=7/20\n")
    assert run("grid", "density", tile)[1] == "density=7/20\ndensity_num=7\ndensity_den=20\n"
    assert run("grid", "search", "--kind", "king", "--det", 9, "--count", 2) == (1, "found=false\n")


def test_reduce(tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 1\n1 -2 3 0\n")
    layout, code_file = tmp_path / "layout.txt", tmp_path / "code.txt"
    code, text = run("reduce", cnf, "--layout", layout, "--code", code_file)
    assert code == 0
    assert text.startswith("c k=10\np graph 20 22\n")
    assert layout.read_text().splitlines()[0] == "x1 1"
    assert len(code_file.read_text().split()) == 10


def test_reduce_unsat_code_request(tmp_path):
    cnf = tmp_path / "u.cnf"
    lines = [f"{a} {b} {c} 0" for a in (1, -1) for b in (2, -2) for c in (3, -3)]
    cnf.write_text("p cnf 3 8\n" + "\n".join(lines) + "\n")
    assert run("reduce", cnf, "--code", tmp_path / "c.txt")[0] == 1


def test_accept_single_criterion():
    code, text = run("accept", "--only", 1)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "criterion\texpected\tgot\tstatus"
    assert len(lines) == 2 and lines[1].endswith("PASS")


def test_console_entry_point(c7):
    proc = subprocess.run([sys.executable, "-m", "idcodes.cli", "solve", "-r", "2", str(c7)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("optimum=4\n")
