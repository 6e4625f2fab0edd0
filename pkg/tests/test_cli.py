import io
from pathlib import Path

import pytest

from sandwich_csp.cli import main
from sandwich_csp.formats import parse_instance

GOLDEN = Path(__file__).parent / "golden"

TWO_K2 = "p swi 4\ne 1 2\ne 3 4\nf 1 3\nf 1 4\nf 2 3\nf 2 4\n"


@pytest.fixture
def run(tmp_path, capsys):
    def go(*argv, stdin=None, text=None):
        args = list(argv)
        if text is not None:
            path = tmp_path / "input.txt"
            path.write_text(text)
            args.append(str(path))
        code = main(args)
        out = capsys.readouterr()
        return code, out.out, out.err
    return go


def test_solve_outputs(run):
    assert run("solve", "--class", "split", text=TWO_K2)[:2] == (0, "NO\n")
    code, out, _ = run("solve", "--class", "multipartite", text="p swi 3\ne 1 2\ne 2 3\nf 1 3\n")
    assert code == 0 and out == "YES\ne 1 2\ne 2 3\n"
    assert run("solve", "--class", "split", text="p swi 1\n")[:2] == (0, "YES\n")


def test_solve_methods_agree(run):
    text = "p swi 5\ne 1 2\ne 2 3\nf 3 4\n"
    answers = {run("solve", "--class", "split", "--method", m, text=text)[1].splitlines()[0]
               for m in ("auto", "poly", "search", "oracle", "partition")}
    assert answers == {"YES"}


def test_stdin(run, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(TWO_K2))
    assert run("solve", "--class", "threshold", "-")[:2] == (0, "NO\n")


def test_output_file(run, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run("gen", "--n", "5", "--seed", "3", "-o", str(target))
    assert code == 0 and out == "" and parse_instance(target.read_text()).n == 5


def test_exit_codes(run):
    assert run("solve", "--class", "split", text="p swi x\n")[0] == 2
    assert run("solve", "--class", "split", text="p swi 3\ne 1 2\nf 1 2\n")[0] == 2
    assert run("solve", "--class", "nosuch", text=TWO_K2)[0] == 1
    assert run("solve", "--class", "threshold", "--method", "partition", text=TWO_K2)[0] == 1
    assert run("solve", "--class", "split", "--method", "oracle", text="p swi 9\n")[0] == 3
    code, out, _ = run("solve", "--class", "permutation", "--method", "search",
                       "--budget", "1", text="p swi 6\n")
    assert (code, out) == (4, "UNKNOWN budget\n")
    assert run("solve", "--class", "split", "/nonexistent/file")[0] == 1


def test_recognize(run):
    assert run("recognize", "--class", "split", text="p gr 4\ne 1 2\ne 3 4\n")[1] == "NO\n"
    assert run("recognize", "--class", "threshold", text="p gr 3\ne 1 2\ne 1 3\n")[1] == "YES\n"


def test_reduce(run):
    code, out, _ = run("reduce", "-r", "pq-pad:1", text="p swi 2\ne 1 2\n")
    assert code == 0 and parse_instance(out).n == 4
    code, out, _ = run("reduce", "-r", "ham-to-kt:1,6", text="p gr 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n")
    assert code == 0 and out.startswith("p gr 45\n")
    assert run("reduce", "-r", "ham-to-kt:x", text="p gr 2\n")[0] == 1
    assert run("reduce", "-r", "nosuch", text="p swi 2\n")[0] == 1


def test_ppower_golden(run):
    code, out, _ = run("ppower", "--builtin", "c5k5", "--structure", str(GOLDEN / "c5.fst"))
    assert code == 0 and out == (GOLDEN / "c5_k5_power.fst").read_text()


def test_polymorphism(run):
    assert run("polymorphism", "--siggers", "structA")[1] == "NONE\n"
    code, out, _ = run("polymorphism", "--siggers", "structK")
    assert code == 0 and len(out.split()) == 16


def test_gen_is_deterministic(run):
    a = run("gen", "--n", "6", "--seed", "11")[1]
    assert a == run("gen", "--n", "6", "--seed", "11")[1]
    assert a != run("gen", "--n", "6", "--seed", "12")[1]
