"""Tests for the signature and problem file grammar."""

import pytest

from afa.errors import (
    ArityError,
    DuplicateSymbolError,
    NoConstantError,
    ParseError,
    UnknownSymbolError,
)
from afa.problem import load_problem, parse_problem, parse_signature
from afa.terms import Signature, Term
from tests.conftest import GEX_PROBLEM, A, B, C, f


class TestParseSignature:
    """Tests for parse_signature."""

    def test_declarations(self):
        """Test function and constant declarations."""
        sig = parse_signature("fun f 2; fun g 1; const a b c;")
        assert sig.functions == {"f": 2, "g": 1}
        assert sig.constants == ("a", "b", "c")

    @pytest.mark.parametrize(
        ("text", "error"),
        [
            ("fun f 0; const a", ArityError),
            ("const a a", DuplicateSymbolError),
            ("fun a 1; const a", DuplicateSymbolError),
            ("fun f 1;", NoConstantError),
            ("fun f; const a", ParseError),
        ],
    )
    def test_errors(self, text, error):
        """Test that bad signatures raise the matching error."""
        with pytest.raises(error):
            parse_signature(text)


class TestParseProblem:
    """Tests for parse_problem and load_problem."""

    def test_example(self, gamma_ex):
        """Test the example file with comments, Polish sides and queries."""
        problem = parse_problem(GEX_PROBLEM)
        assert problem.signature == Signature({"f": 2}, ["a", "b", "c"])
        assert problem.equations == gamma_ex
        assert problem.queries == ((A, f(B, f(A, B))), (A, C))

    def test_declarations_after_equations(self):
        """Test that sides are resolved against the complete signature."""
        problem = parse_problem("eq a = f(a); const a; fun f 1;")
        assert list(problem.equations) == [(A, Term("f", [A]))]

    def test_empty_presentation(self):
        """Test a problem without equations."""
        problem = parse_problem("fun f 1; const a;")
        assert len(problem.equations) == 0
        assert problem.queries == ()

    def test_syntax_error_position(self):
        """Test that syntax errors report the line."""
        with pytest.raises(ParseError) as info:
            parse_problem("fun f 1; const a;\neq a = ;")
        assert info.value.line == 2

    def test_unknown_symbol(self):
        """Test that equations may only use declared symbols."""
        with pytest.raises(UnknownSymbolError):
            parse_problem("fun f 1; const a; eq a = f(d);")

    def test_wrong_arity(self):
        """Test that equations respect the declared arities."""
        with pytest.raises(ArityError):
            parse_problem("fun f 1; const a; eq a = f(a,a);")

    def test_load_problem(self, gex_path, gamma_ex):
        """Test reading a problem from disk."""
        assert load_problem(gex_path).equations == gamma_ex

    def test_load_missing_file(self, tmp_path):
        """Test that an unreadable file is a parse error."""
        with pytest.raises(ParseError, match="Cannot read problem file"):
            load_problem(tmp_path / "missing.afa")
