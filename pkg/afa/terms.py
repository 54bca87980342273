"""Signatures, ground terms, tree positions and equation sets."""

import itertools
from collections.abc import Iterable, Iterator, Mapping
from typing import Any

from lark import Lark, Transformer, UnexpectedInput
from lark.exceptions import VisitError

from .errors import (
    ArityError,
    DuplicateSymbolError,
    InvalidPositionError,
    NoConstantError,
    ParseError,
    SignatureMismatchError,
    UnknownSymbolError,
)

# A position is the sequence of child indices from the root; () is the root itself
Position = tuple[int, ...]
TreeRepresentation = dict[Position, str]

ROOT_LABEL = "ε"

NAME_PATTERN = r"/[A-Za-z_][A-Za-z0-9_']*/"

_TERM_GRAMMAR = rf"""
    ?start: term
    term: NAME ("(" term ("," term)* ")")?
    NAME: {NAME_PATTERN}
    %import common.WS
    %ignore WS
"""


class Signature:
    """A finite functional signature.

    Args:
        functions: Function symbols with their arities (each at least 1)
        constants: Constant symbols

    Raises:
        DuplicateSymbolError: If a name is declared twice
        ArityError: If a function symbol has arity below 1
        NoConstantError: If no constant is declared
    """

    def __init__(
        self,
        functions: Mapping[str, int] | Iterable[tuple[str, int]] = (),
        constants: Iterable[str] = (),
    ):
        pairs = list(functions.items()) if isinstance(functions, Mapping) else list(functions)
        names = list(constants)

        seen: set[str] = set()
        for name in [name for name, _ in pairs] + names:
            if name in seen:
                raise DuplicateSymbolError(f"Symbol '{name}' is declared more than once")
            seen.add(name)

        for name, arity in pairs:
            if arity < 1:
                raise ArityError(
                    f"Function symbol '{name}' must have arity >= 1, got {arity} "
                    "(declare constants with 'const')"
                )

        if not names:
            raise NoConstantError("Signature must declare at least one constant")

        self.functions: dict[str, int] = dict(pairs)
        self.constants: tuple[str, ...] = tuple(names)

    @property
    def symbols(self) -> tuple[str, ...]:
        """All symbol names, constants first."""
        return self.constants + tuple(self.functions)

    @property
    def max_arity(self) -> int:
        return max(self.functions.values(), default=0)

    @property
    def single_char(self) -> bool:
        """True when every symbol is one character long, which makes Polish notation usable."""
        return all(len(name) == 1 for name in self.symbols)

    def arity(self, symbol: str) -> int:
        """Return the arity of a symbol (0 for constants).

        Raises:
            UnknownSymbolError: If the symbol is not declared
        """
        if symbol in self.functions:
            return self.functions[symbol]
        if symbol in self.constants:
            return 0
        raise UnknownSymbolError(f"Unknown symbol '{symbol}'")

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.functions or symbol in self.constants

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self.functions == other.functions and set(self.constants) == set(other.constants)

    def __hash__(self) -> int:
        return hash((frozenset(self.functions.items()), frozenset(self.constants)))

    def __str__(self) -> str:
        parts = [f"fun {name} {arity}" for name, arity in self.functions.items()]
        parts.append("const " + " ".join(self.constants))
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"Signature({str(self)!r})"


class Term:
    """An immutable ground term with structural equality.

    Height, size and hash are computed once at construction.

    Args:
        symbol: Root symbol
        args: Children, one per argument place of the root symbol
    """

    __slots__ = ("symbol", "args", "height", "size", "_hash", "_text")

    def __init__(self, symbol: str, args: Iterable["Term"] = ()):
        self.symbol = symbol
        self.args: tuple[Term, ...] = tuple(args)
        if self.args:
            self.height: int = 1 + max(arg.height for arg in self.args)
            self.size: int = 1 + sum(arg.size for arg in self.args)
        else:
            self.height = 0
            self.size = 1
        self._hash = hash((symbol, self.args))
        self._text: str | None = None

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return (
            self._hash == other._hash and self.symbol == other.symbol and self.args == other.args
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self._text is None:
            if self.args:
                self._text = f"{self.symbol}({','.join(str(arg) for arg in self.args)})"
            else:
                self._text = self.symbol
        return self._text

    def __repr__(self) -> str:
        return f"Term({str(self)!r})"

    @property
    def is_constant(self) -> bool:
        return not self.args

    def positions(self) -> Iterator[tuple[Position, "Term"]]:
        """Yield (position, subterm) pairs in pre-order."""
        stack: list[tuple[Position, Term]] = [((), self)]
        while stack:
            position, term = stack.pop()
            yield position, term
            for index in range(len(term.args) - 1, -1, -1):
                stack.append((position + (index,), term.args[index]))

    def subterms(self) -> Iterator["Term"]:
        """Yield every subterm occurrence (including the term itself) in pre-order."""
        for _, term in self.positions():
            yield term


def height(t: Term) -> int:
    """Height of the tree of t; constants have height 0."""
    return t.height


def size(t: Term) -> int:
    """Number of nodes in the tree of t."""
    return t.size


def term_order_key(t: Term) -> tuple[int, int, str]:
    """Sort key of the fixed term order: height, then size, then functional notation."""
    return (t.height, t.size, str(t))


def tree_of(t: Term) -> TreeRepresentation:
    """Return the labeled tree of t as a map from positions to symbols.

    Examples:
        f(b,c) -> {(): "f", (0,): "b", (1,): "c"}
    """
    return {position: sub.symbol for position, sub in t.positions()}


def subterm_at(t: Term, position: Position) -> Term:
    """Return the subterm of t rooted at position.

    Raises:
        InvalidPositionError: If position does not address a node of t
    """
    current = t
    for depth, index in enumerate(position):
        if not 0 <= index < len(current.args):
            raise InvalidPositionError(
                f"Position {format_position(position)} is not a position of {t} "
                f"(no child {index} below {format_position(position[:depth])})"
            )
        current = current.args[index]
    return current


def replace_at(t: Term, position: Position, replacement: Term) -> Term:
    """Return t with the subterm at position replaced."""
    if not position:
        return replacement
    index, rest = position[0], position[1:]
    if not 0 <= index < len(t.args):
        raise InvalidPositionError(f"Position {format_position(position)} is not a position of {t}")
    args = list(t.args)
    args[index] = replace_at(args[index], rest, replacement)
    return Term(t.symbol, args)


def format_position(position: Position, max_arity: int = 10) -> str:
    """Print a position as a digit string, or dash separated when arities exceed 10."""
    if not position:
        return ROOT_LABEL
    if max_arity <= 10:
        return "".join(str(index) for index in position)
    return "-".join(str(index) for index in position)


def parse_position(text: str) -> Position:
    """Inverse of format_position."""
    text = text.strip()
    if text in ("", ROOT_LABEL):
        return ()
    try:
        if "-" in text:
            return tuple(int(part) for part in text.split("-"))
        return tuple(int(char) for char in text)
    except ValueError as e:
        raise InvalidPositionError(f"Invalid position '{text}'") from e


def to_polish(t: Term) -> str:
    """Print t in Polish notation (only unambiguous for single character symbols)."""
    return "".join(sub.symbol for sub in t.subterms())


def check_term(t: Term, sig: Signature) -> None:
    """Check that t is well formed over sig.

    Raises:
        SignatureMismatchError: If t uses an undeclared symbol or a wrong arity
    """
    for sub in t.subterms():
        if sub.symbol not in sig or sig.arity(sub.symbol) != len(sub.args):
            raise SignatureMismatchError(f"Term '{t}' is not well formed over {sig}")


def transform_tree(transformer: Transformer, tree: Any) -> Any:
    """Run a lark transformer, re-raising errors from callbacks unwrapped."""
    try:
        return transformer.transform(tree)
    except VisitError as e:
        raise e.orig_exc from e


def _parse_polish(text: str, sig: Signature) -> Term:
    result: Term | None = None
    stack: list[tuple[str, int, list[Term]]] = []
    for index, char in enumerate(text):
        if result is not None:
            raise ParseError(f"Trailing input '{text[index:]}' after term '{result}'", 1, index + 1)
        arity = sig.arity(char)
        if arity:
            stack.append((char, arity, []))
            continue

        finished = Term(char)
        while True:
            if not stack:
                result = finished
                break
            symbol, symbol_arity, args = stack[-1]
            args.append(finished)
            if len(args) < symbol_arity:
                break
            stack.pop()
            finished = Term(symbol, args)

    if result is None:
        raise ParseError(f"Incomplete Polish term '{text}'")
    return result


def resolve_name(name: str, sig: Signature) -> Term:
    """Read a bare name as a constant, or as a Polish string over single character symbols."""
    if name in sig:
        arity = sig.arity(name)
        if arity:
            raise ArityError(f"Function symbol '{name}' expects {arity} argument(s), got 0")
        return Term(name)
    if sig.single_char and len(name) > 1:
        return _parse_polish(name, sig)
    raise UnknownSymbolError(f"Unknown symbol '{name}'")


class _TermBuilder(Transformer):
    def __init__(self, sig: Signature):
        super().__init__()
        self.sig = sig

    def term(self, children: list[Any]) -> Term:
        name, *args = children
        name = str(name)
        if not args:
            return resolve_name(name, self.sig)
        arity = self.sig.arity(name)
        if arity != len(args):
            raise ArityError(f"Symbol '{name}' expects {arity} argument(s), got {len(args)}")
        return Term(name, args)


_TERM_PARSER = Lark(_TERM_GRAMMAR, parser="lalr")


def parse_term(text: str, sig: Signature) -> Term:
    """Parse a ground term in functional ("f(b,c)") or Polish ("fbc") notation.

    Args:
        text: Term source
        sig: Signature the term is over

    Returns:
        The parsed term

    Raises:
        ParseError: On a syntax error or trailing input
        UnknownSymbolError: If a symbol is not declared
        ArityError: If a symbol gets the wrong number of arguments
    """
    try:
        tree = _TERM_PARSER.parse(text)
    except UnexpectedInput as e:
        raise ParseError(f"Invalid term '{text.strip()}'", e.line, e.column) from e
    return transform_tree(_TermBuilder(sig), tree)


def terms_up_to_height(sig: Signature, max_height: int) -> list[Term]:
    """Return every ground term of height at most max_height, in term order."""
    constants = [Term(name) for name in sig.constants]
    terms = list(constants)
    for _ in range(max_height):
        applied = [
            Term(symbol, args)
            for symbol, arity in sig.functions.items()
            for args in itertools.product(terms, repeat=arity)
        ]
        terms = constants + applied
    return sorted(terms, key=term_order_key)


class EquationSet:
    """A finite set Γ of ground term equations over one signature.

    Args:
        signature: Signature every side must be well formed over
        equations: Pairs (p, q) standing for p = q

    Raises:
        SignatureMismatchError: If a side is not well formed over the signature
    """

    def __init__(self, signature: Signature, equations: Iterable[tuple[Term, Term]] = ()):
        self.signature = signature
        pairs = []
        for left, right in equations:
            check_term(left, signature)
            check_term(right, signature)
            pairs.append((left, right))
        self.equations: tuple[tuple[Term, Term], ...] = tuple(pairs)
        self._hash = hash((signature, self.equations))

    def __iter__(self) -> Iterator[tuple[Term, Term]]:
        return iter(self.equations)

    def __len__(self) -> int:
        return len(self.equations)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquationSet):
            return NotImplemented
        return self.signature == other.signature and self.equations == other.equations

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return "; ".join(f"{left} = {right}" for left, right in self.equations)

    def __repr__(self) -> str:
        return f"EquationSet({str(self)!r})"

    def sides(self) -> tuple[Term, ...]:
        """Distinct terms occurring as a side of an equation, in order of first occurrence."""
        return tuple(dict.fromkeys(side for pair in self.equations for side in pair))

    def subterms(self) -> tuple[Term, ...]:
        """ST(Γ): distinct subterms of all sides, in term order."""
        found = {sub for side in self.sides() for sub in side.subterms()}
        return tuple(sorted(found, key=term_order_key))

    def height_bound(self) -> int:
        """Maximum height of a side, 0 for the empty set."""
        return max((side.height for side in self.sides()), default=0)

    def union(self, other: "EquationSet") -> "EquationSet":
        if self.signature != other.signature:
            raise SignatureMismatchError("Cannot join equation sets over different signatures")
        return EquationSet(self.signature, self.equations + other.equations)
