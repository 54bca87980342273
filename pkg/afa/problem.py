"""Signature and problem file grammar.

A problem file is a signature block followed by equations, statements separated by ";":

    fun f 2; const a b c;
    eq a = fbc;
    eq c = f(a,b);
    query a = f(b,f(a,b));

Lines starting with "#" are comments.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from lark import Lark, Token, Transformer, UnexpectedInput
from loguru import logger

from .errors import ArityError, ParseError
from .terms import NAME_PATTERN, EquationSet, Signature, Term, resolve_name, transform_tree

_PROBLEM_GRAMMAR = rf"""
    signature: (decl | ";")*
    problem: (statement | ";")*

    ?decl: fun_decl | const_decl
    ?statement: decl | equation | query

    fun_decl: "fun" NAME INT
    const_decl: "const" NAME+
    equation: "eq" term "=" term
    query: "query" term "=" term

    term: NAME ("(" term ("," term)* ")")?

    NAME: {NAME_PATTERN}
    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_PROBLEM_PARSER = Lark(_PROBLEM_GRAMMAR, start=["signature", "problem"], parser="lalr")


@dataclass(frozen=True)
class Problem:
    """A presentation (Σ, Γ) read from a problem file, with optional queries."""

    signature: Signature
    equations: EquationSet
    queries: tuple[tuple[Term, Term], ...] = field(default=())


class _RawTerm:
    """A term as written, resolved against the signature once it is fully declared."""

    def __init__(self, name: str, args: list["_RawTerm"]):
        self.name = name
        self.args = args

    def resolve(self, sig: Signature) -> Term:
        if not self.args:
            return resolve_name(self.name, sig)
        arity = sig.arity(self.name)
        if arity != len(self.args):
            raise ArityError(
                f"Symbol '{self.name}' expects {arity} argument(s), got {len(self.args)}"
            )
        return Term(self.name, [arg.resolve(sig) for arg in self.args])


class _ProblemBuilder(Transformer):
    def term(self, children: list[Any]) -> _RawTerm:
        name, *args = children
        return _RawTerm(str(name), args)

    def fun_decl(self, children: list[Token]) -> tuple[str, str, int]:
        name, arity = children
        return ("fun", str(name), int(arity))

    def const_decl(self, children: list[Token]) -> tuple[str, list[str]]:
        return ("const", [str(name) for name in children])

    def equation(self, children: list[_RawTerm]) -> tuple[str, _RawTerm, _RawTerm]:
        return ("eq", children[0], children[1])

    def query(self, children: list[_RawTerm]) -> tuple[str, _RawTerm, _RawTerm]:
        return ("query", children[0], children[1])

    def signature(self, children: list[Any]) -> list[Any]:
        return children

    def problem(self, children: list[Any]) -> list[Any]:
        return children


def _parse_statements(text: str, start: str) -> list[Any]:
    try:
        tree = _PROBLEM_PARSER.parse(text, start=start)
    except UnexpectedInput as e:
        raise ParseError(f"Invalid {start} text", e.line, e.column) from e
    return transform_tree(_ProblemBuilder(), tree)


def _signature_from(statements: list[Any]) -> Signature:
    functions: list[tuple[str, int]] = []
    constants: list[str] = []
    for statement in statements:
        if statement[0] == "fun":
            functions.append((statement[1], statement[2]))
        elif statement[0] == "const":
            constants.extend(statement[1])
    return Signature(functions, constants)


def parse_signature(text: str) -> Signature:
    """Parse signature statements such as "fun f 2; const a b c".

    Args:
        text: Signature source

    Returns:
        The declared signature

    Raises:
        ParseError: On a syntax error
        DuplicateSymbolError: If a symbol is declared twice
        ArityError: If a function symbol is declared with arity 0
        NoConstantError: If no constant is declared
    """
    return _signature_from(_parse_statements(text, "signature"))


def parse_problem(text: str) -> Problem:
    """Parse a problem file: signature statements, then "eq" and "query" statements.

    Equation sides may be written in functional or (for single character symbols) Polish
    notation; they are resolved after all declarations have been read.
    """
    statements = _parse_statements(text, "problem")
    sig = _signature_from(statements)

    equations = []
    queries = []
    for statement in statements:
        if statement[0] == "eq":
            equations.append((statement[1].resolve(sig), statement[2].resolve(sig)))
        elif statement[0] == "query":
            queries.append((statement[1].resolve(sig), statement[2].resolve(sig)))

    logger.debug(f"Parsed problem with {len(equations)} equation(s) and {len(queries)} query(ies)")
    return Problem(sig, EquationSet(sig, equations), tuple(queries))


def load_problem(path: str | Path) -> Problem:
    """Read and parse a problem file.

    Raises:
        ParseError: If the file cannot be read or parsed
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read problem file '{path}': {e}") from e
    return parse_problem(text)
