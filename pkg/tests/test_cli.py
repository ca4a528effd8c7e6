import io
import subprocess
import sys
from pathlib import Path

import pytest

from ordsemi.cli import run

TABLES = Path(__file__).resolve().parent.parent / "tables"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_eval_omega_sum():
    code, out, err = call("eval", "-s", "ordinal-sum", "-e", "(one)^w")
    assert (code, out, err) == (0, "w\n", "")


@pytest.mark.parametrize("expr,expected", [
    ("one (one)^w", "w"),
    ("(one)^w one", "w + 1"),
    ("((one)^w)^w", "w^2"),
    ("[w^2] (one)^w one^3", "w^2 + w + 3"),
    ("[w + 1] [w^(w)]", "w^(w)"),
])
def test_eval_ordinal_sum(expr, expected):
    code, out, _ = call("eval", "-s", "ordinal-sum", "-e", expr)
    assert code == 0 and out == expected + "\n"


def test_eval_table_prints_element_name():
    code, out, _ = call("eval", "-s", f"table:{TABLES / 'sat-counter.tbl'}", "-e", "0 1 (0)^w")
    assert (code, out) == (0, "1\n")
    code, out, _ = call("eval", "-s", "omega:left-projection", "-e", "a Omega")
    assert (code, out) == (0, "Ω\n")


def test_eval_with_trace():
    code, out, _ = call("eval", "-s", "ordinal-sum", "-e", "(one)^w", "--trace")
    assert code == 0
    assert out.splitlines() == ["U(1) -> 1", "F(w) -> w", "w"]


def test_explain():
    code, out, _ = call("explain", "-s", "ordinal-sum", "-e", "(one)^w one")
    assert code == 0
    lines = out.splitlines()
    assert lines[-2].startswith("F(w)")
    assert lines[-1] == "E(w + 1) -> w + 1"


def test_check_tables():
    code, out, _ = call("check", "-t", str(TABLES / "right-projection.tbl"))
    assert code == 1
    assert "L3 rotation at (s=a, t=b)" in out
    for name in ["left-projection.tbl", "sat-counter.tbl", "min-chain-5.tbl"]:
        code, out, _ = call("check", "-t", str(TABLES / name))
        assert code == 0 and out.startswith("pass: ")
    code, out, _ = call("check", "-s", "min-chain:3", "--kmax", "6")
    assert code == 0 and "k_max=6" in out


def test_fuzz_commands():
    code, out, _ = call("fuzz", "-s", "left-projection", "--seed", "7", "--cases", "50")
    assert code == 0
    assert "50 pass, 0 fail" in out and "coverage:" in out
    code, out, _ = call("fuzz", "-t", str(TABLES / "right-projection.tbl"), "--cases", "300", "--format", "lines")
    assert code == 1
    assert " fail" in out and all(line.startswith("case ") for line in out.splitlines())


def test_fuzz_is_deterministic():
    a = call("fuzz", "-s", "sat-counter", "--seed", "4", "--cases", "40", "--depth", "3")
    b = call("fuzz", "-s", "sat-counter", "--seed", "4", "--cases", "40", "--depth", "3")
    assert a == b


@pytest.mark.parametrize("argv", [
    ("eval", "-s", "ordinal-sum", "-e", "(one"),
    ("eval", "-s", "ordinal-sum", "-e", "banana"),
    ("eval", "-s", "nope", "-e", "a"),
    ("eval", "-s", "table:/no/such/file", "-e", "a"),
    ("check",),
    ("check", "-s", "ordinal-sum"),
    ("fuzz", "-s", "left-projection", "--cases", "0"),
    ("fuzz", "-s", "left-projection", "-t", "x.tbl"),
    ("eval", "-s", "ordinal-sum"),
    ("frobnicate",),
])
def test_bad_input_exits_2_with_empty_stdout(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ordsemi", "eval", "-s", "ordinal-sum", "-e", "(one)^w"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "w\n"
