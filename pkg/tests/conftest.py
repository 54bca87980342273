"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest
from click.testing import CliRunner

from afa.terms import EquationSet, Signature, Term

GEX_PROBLEM = """
# f binary; a ~ f(b,c) and c ~ f(a,b)
fun f 2;
const a b c;
eq a = fbc;
eq c = f(a,b);
query a = f(b,f(a,b));
query a = c;
"""


def f(*args: Term) -> Term:
    return Term("f", args)


A, B, C = Term("a"), Term("b"), Term("c")


@pytest.fixture
def sig_ex() -> Signature:
    """Binary f with constants a, b, c."""
    return Signature({"f": 2}, ["a", "b", "c"])


@pytest.fixture
def gamma_ex(sig_ex: Signature) -> EquationSet:
    """{a = f(b,c), c = f(a,b)}: two cyclic types, b untyped."""
    return EquationSet(sig_ex, [(A, f(B, C)), (C, f(A, B))])


@pytest.fixture
def unary_sig() -> Signature:
    return Signature({"f": 1}, ["a"])


@pytest.fixture
def free_unary(unary_sig: Signature) -> EquationSet:
    """No equations: F_Γ is the free algebra a, f(a), f(f(a)), ..."""
    return EquationSet(unary_sig)


@pytest.fixture
def loop_unary(unary_sig: Signature) -> EquationSet:
    """{f(a) = a}: one element, one infinite class."""
    return EquationSet(unary_sig, [(f(A), A)])


@pytest.fixture
def swap() -> EquationSet:
    """{f(a) = b, f(b) = a}: two elements swapped by f."""
    sig = Signature({"f": 1}, ["a", "b"])
    return EquationSet(sig, [(f(A), B), (f(B), A)])


@pytest.fixture
def runner() -> CliRunner:
    """Create a CLI test runner."""
    return CliRunner()


@pytest.fixture
def write_problem(tmp_path: Path):
    """Write problem file text to tmp_path and return its path."""

    def write(text: str, name: str = "problem.afa") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def gex_path(write_problem) -> str:
    return write_problem(GEX_PROBLEM, "gex.afa")
