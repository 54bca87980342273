"""First-order formulas over F(B) with tester predicates.

Open terms are built from variables, Σ function symbols and elements of B (Σ constants denote
their B elements). Atoms are equations, tester atoms `is_f(t)` and the constants true/false.

Formula syntax:

    exists y. x = f(y,b)
    forall y. (y = a | is_f(y))
    is_f(a) & not a = b
    exists x y. x != y & [f(b,c)] = x

A quantifier extends as far to the right as possible; `[t]` names the B element of a ground
term t.
"""

import itertools
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from lark import Lark, Token, Transformer, UnexpectedInput

from .errors import (
    ArityError,
    NotFiniteError,
    ParseError,
    UnassignedVariableError,
    UnboundVariableError,
)
from .free_extension import BElement, FBTerm, PartialAlgebra, apply, is_f
from .terms import NAME_PATTERN, transform_tree


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    """A function symbol applied to open terms."""

    symbol: str
    args: tuple["OpenTerm", ...]

    def __str__(self) -> str:
        return f"{self.symbol}({','.join(str(arg) for arg in self.args)})"


OpenTerm = Var | App | BElement


def term_vars(t: OpenTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, App):
        return frozenset().union(*(term_vars(arg) for arg in t.args))
    return frozenset()


def is_ground(t: OpenTerm) -> bool:
    return not term_vars(t)


def substitute_term(t: OpenTerm, mapping: Mapping[str, OpenTerm]) -> OpenTerm:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(t.symbol, tuple(substitute_term(arg, mapping) for arg in t.args))
    return t


class Formula:
    """Base class of formula nodes."""


@dataclass(frozen=True)
class Top(Formula):
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bottom(Formula):
    def __str__(self) -> str:
        return "false"


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Eq(Formula):
    left: OpenTerm
    right: OpenTerm

    def __str__(self) -> str:
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Is(Formula):
    """Tester atom Is_f(t)."""

    symbol: str
    term: OpenTerm

    def __str__(self) -> str:
        return f"is_{self.symbol}({self.term})"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def __str__(self) -> str:
        if isinstance(self.body, Eq):
            return f"{self.body.left} != {self.body.right}"
        return f"!{_wrap(self.body)}"


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __str__(self) -> str:
        return " & ".join(_wrap(part) for part in self.parts)


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __str__(self) -> str:
        return " | ".join(_wrap(part) for part in self.parts)


@dataclass(frozen=True)
class Exists(Formula):
    names: tuple[str, ...]
    body: Formula

    def __str__(self) -> str:
        return f"exists {' '.join(self.names)}. {self.body}"


@dataclass(frozen=True)
class Forall(Formula):
    names: tuple[str, ...]
    body: Formula

    def __str__(self) -> str:
        return f"forall {' '.join(self.names)}. {self.body}"


def _wrap(part: Formula) -> str:
    if isinstance(part, And | Or | Exists | Forall):
        return f"({part})"
    return str(part)


def is_literal(formula: Formula) -> bool:
    """Equations, tester atoms and their negations."""
    if isinstance(formula, Not):
        return isinstance(formula.body, Eq | Is)
    return isinstance(formula, Eq | Is)


def conjunction(parts: Iterable[Formula]) -> Formula:
    """Flattened, deduplicated conjunction; true when empty, false when a part is false."""
    found: dict[Formula, None] = {}
    for part in parts:
        if isinstance(part, Bottom):
            return BOTTOM
        if isinstance(part, Top):
            continue
        for item in part.parts if isinstance(part, And) else (part,):
            found[item] = None
    if not found:
        return TOP
    if len(found) == 1:
        return next(iter(found))
    return And(tuple(found))


def disjunction(parts: Iterable[Formula]) -> Formula:
    """Flattened, deduplicated disjunction; false when empty, true when a part is true."""
    found: dict[Formula, None] = {}
    for part in parts:
        if isinstance(part, Top):
            return TOP
        if isinstance(part, Bottom):
            continue
        for item in part.parts if isinstance(part, Or) else (part,):
            found[item] = None
    if not found:
        return BOTTOM
    if len(found) == 1:
        return next(iter(found))
    return Or(tuple(found))


def literal_terms(literal: Formula) -> tuple[OpenTerm, ...]:
    atom = literal.body if isinstance(literal, Not) else literal
    if isinstance(atom, Eq):
        return (atom.left, atom.right)
    if isinstance(atom, Is):
        return (atom.term,)
    return ()


def free_vars(formula: Formula) -> frozenset[str]:
    if isinstance(formula, Eq | Is | Not) and is_literal(formula):
        return frozenset().union(*(term_vars(t) for t in literal_terms(formula)))
    if isinstance(formula, Not):
        return free_vars(formula.body)
    if isinstance(formula, And | Or):
        return frozenset().union(*(free_vars(part) for part in formula.parts))
    if isinstance(formula, Exists | Forall):
        return free_vars(formula.body) - set(formula.names)
    return frozenset()


def is_quantifier_free(formula: Formula) -> bool:
    if isinstance(formula, Exists | Forall):
        return False
    if isinstance(formula, Not):
        return is_quantifier_free(formula.body)
    if isinstance(formula, And | Or):
        return all(is_quantifier_free(part) for part in formula.parts)
    return True


def quantifier_depth(formula: Formula) -> int:
    if isinstance(formula, Exists | Forall):
        return len(formula.names) + quantifier_depth(formula.body)
    if isinstance(formula, Not):
        return quantifier_depth(formula.body)
    if isinstance(formula, And | Or):
        return max((quantifier_depth(part) for part in formula.parts), default=0)
    return 0


def substitute(formula: Formula, mapping: Mapping[str, OpenTerm]) -> Formula:
    """Replace free occurrences of variables; bound names must not occur in the replacements."""
    if isinstance(formula, Eq):
        return Eq(substitute_term(formula.left, mapping), substitute_term(formula.right, mapping))
    if isinstance(formula, Is):
        return Is(formula.symbol, substitute_term(formula.term, mapping))
    if isinstance(formula, Not):
        return Not(substitute(formula.body, mapping))
    if isinstance(formula, And):
        return And(tuple(substitute(part, mapping) for part in formula.parts))
    if isinstance(formula, Or):
        return Or(tuple(substitute(part, mapping) for part in formula.parts))
    if isinstance(formula, Exists | Forall):
        inner = {name: t for name, t in mapping.items() if name not in formula.names}
        return type(formula)(formula.names, substitute(formula.body, inner))
    return formula


def rename_bound(formula: Formula, fresh: Callable[[str], str]) -> Formula:
    """Give every quantified variable a new name drawn from fresh."""
    if isinstance(formula, Exists | Forall):
        renamed = {name: fresh(name) for name in formula.names}
        body = substitute(formula.body, {old: Var(new) for old, new in renamed.items()})
        return type(formula)(tuple(renamed.values()), rename_bound(body, fresh))
    if isinstance(formula, Not):
        return Not(rename_bound(formula.body, fresh))
    if isinstance(formula, And):
        return And(tuple(rename_bound(part, fresh) for part in formula.parts))
    if isinstance(formula, Or):
        return Or(tuple(rename_bound(part, fresh) for part in formula.parts))
    return formula


_FORMULA_GRAMMAR = rf"""
    ?start: formula

    ?formula: disjunction
    ?disjunction: conjunction ("|" conjunction)*
    ?conjunction: unary ("&" unary)*
    ?unary: "!" unary -> negation
          | "not" unary -> negation
          | "exists" NAME+ "." formula -> exists
          | "forall" NAME+ "." formula -> forall
          | atom
    ?atom: "true" -> true
         | "false" -> false
         | "(" formula ")"
         | term "=" term -> equal
         | term "!=" term -> unequal
         | TESTER "(" term ")" -> tester

    term: NAME ("(" term ("," term)* ")")?
        | "[" term "]" -> element

    TESTER.2: /is_[A-Za-z_][A-Za-z0-9_']*/
    NAME: {NAME_PATTERN}

    %import common.WS
    %ignore WS
"""

_FORMULA_PARSER = Lark(_FORMULA_GRAMMAR, parser="lalr")


class _FormulaBuilder(Transformer):
    def __init__(self, algebra: PartialAlgebra):
        super().__init__()
        self.algebra = algebra
        self.sig = algebra.signature

    def term(self, children: list[Any]) -> OpenTerm:
        name, *args = children
        name = str(name)
        if not args:
            if name in self.sig.constants:
                return self.algebra.constants[name]
            if name in self.sig.functions:
                raise ArityError(
                    f"Function symbol '{name}' expects {self.sig.arity(name)} argument(s), got 0"
                )
            return Var(name)
        arity = self.sig.arity(name)
        if arity != len(args):
            raise ArityError(f"Symbol '{name}' expects {arity} argument(s), got {len(args)}")
        return App(name, tuple(args))

    def element(self, children: list[OpenTerm]) -> BElement:
        (inner,) = children
        if not is_ground(inner):
            raise ParseError(f"Element brackets need a ground term, got '{inner}'")
        value = evaluate_term(self.algebra, inner, {})
        if not isinstance(value, BElement):
            raise ParseError(f"'{inner}' does not denote an element of B")
        return value

    def equal(self, children: list[OpenTerm]) -> Formula:
        return Eq(children[0], children[1])

    def unequal(self, children: list[OpenTerm]) -> Formula:
        return Not(Eq(children[0], children[1]))

    def tester(self, children: list[Any]) -> Formula:
        token, t = children
        symbol = str(token)[len("is_") :]
        if symbol not in self.sig.functions:
            raise ParseError(f"Tester '{token}' does not name a function symbol")
        return Is(symbol, t)

    def true(self, _: list[Any]) -> Formula:
        return TOP

    def false(self, _: list[Any]) -> Formula:
        return BOTTOM

    def negation(self, children: list[Formula]) -> Formula:
        return Not(children[0])

    def conjunction(self, children: list[Formula]) -> Formula:
        return And(tuple(children))

    def disjunction(self, children: list[Formula]) -> Formula:
        return Or(tuple(children))

    def exists(self, children: list[Any]) -> Formula:
        *names, body = children
        return Exists(self._names(names), body)

    def forall(self, children: list[Any]) -> Formula:
        *names, body = children
        return Forall(self._names(names), body)

    def _names(self, tokens: Sequence[Token]) -> tuple[str, ...]:
        names = tuple(str(token) for token in tokens)
        for name in names:
            if name in self.sig:
                raise ParseError(f"Cannot quantify over symbol '{name}'")
        return names


def parse_formula(text: str, algebra: PartialAlgebra, sentence: bool = False) -> Formula:
    """Parse a formula over the signature of algebra.

    Args:
        text: Formula source
        algebra: The partial algebra B whose elements the formula may name
        sentence: Require the formula to have no free variables

    Raises:
        ParseError: On a syntax error, a wrong arity or a bad element literal
        UnknownSymbolError: If a function symbol is not declared
        UnboundVariableError: If sentence is set and a variable is free
    """
    try:
        tree = _FORMULA_PARSER.parse(text)
    except UnexpectedInput as e:
        raise ParseError(f"Invalid formula '{text.strip()}'", e.line, e.column) from e
    formula = transform_tree(_FormulaBuilder(algebra), tree)

    if sentence:
        unbound = free_vars(formula)
        if unbound:
            raise UnboundVariableError(f"Unbound variable(s): {', '.join(sorted(unbound))}")
    return formula


def evaluate_term(
    algebra: PartialAlgebra, t: OpenTerm, valuation: Mapping[str, FBTerm]
) -> FBTerm:
    """Value of an open term in F(B) under a valuation.

    Raises:
        UnassignedVariableError: If a variable of t has no value
    """
    if isinstance(t, Var):
        if t.name not in valuation:
            raise UnassignedVariableError(f"Variable '{t.name}' has no value")
        return valuation[t.name]
    if isinstance(t, App):
        return apply(algebra, t.symbol, [evaluate_term(algebra, arg, valuation) for arg in t.args])
    return t


def evaluate(
    algebra: PartialAlgebra,
    formula: Formula,
    valuation: Mapping[str, FBTerm] | None = None,
    domain: Sequence[FBTerm] | None = None,
) -> bool:
    """Truth value of a formula in F(B).

    Quantifiers range over domain. Without a domain they range over B, which is only correct
    when F(B) = B.

    Raises:
        UnassignedVariableError: If a free variable has no value
        NotFiniteError: If a quantifier is met without a domain and F(B) is infinite
    """
    valuation = dict(valuation or {})

    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bottom):
        return False
    if isinstance(formula, Eq):
        return evaluate_term(algebra, formula.left, valuation) == evaluate_term(
            algebra, formula.right, valuation
        )
    if isinstance(formula, Is):
        return is_f(evaluate_term(algebra, formula.term, valuation), formula.symbol)
    if isinstance(formula, Not):
        return not evaluate(algebra, formula.body, valuation, domain)
    if isinstance(formula, And):
        return all(evaluate(algebra, part, valuation, domain) for part in formula.parts)
    if isinstance(formula, Or):
        return any(evaluate(algebra, part, valuation, domain) for part in formula.parts)
    if isinstance(formula, Exists | Forall):
        if domain is None:
            if not algebra.is_closed:
                raise NotFiniteError("Quantifiers over an infinite F(B) need an explicit domain")
            domain = algebra.elements
        values = (
            evaluate(algebra, formula.body, valuation | dict(zip(formula.names, choice)), domain)
            for choice in itertools.product(domain, repeat=len(formula.names))
        )
        return any(values) if isinstance(formula, Exists) else all(values)
    raise TypeError(f"Cannot evaluate {formula!r}")


def evaluate_qf(
    algebra: PartialAlgebra, formula: Formula, valuation: Mapping[str, FBTerm] | None = None
) -> bool:
    """Truth value of a quantifier-free formula.

    Raises:
        ValueError: If the formula has a quantifier
        UnassignedVariableError: If a free variable has no value
    """
    if not is_quantifier_free(formula):
        raise ValueError(f"Formula is not quantifier-free: {formula}")
    return evaluate(algebra, formula, valuation)


def model_check(algebra: PartialAlgebra, formula: Formula) -> bool:
    """Decide a sentence by exhaustive evaluation over a finite F(B) = B.

    Raises:
        NotFiniteError: If F(B) is infinite
        UnboundVariableError: If the formula has free variables
    """
    if not algebra.is_closed:
        raise NotFiniteError("Model checking needs F(B) = B")
    unbound = free_vars(formula)
    if unbound:
        raise UnboundVariableError(f"Unbound variable(s): {', '.join(sorted(unbound))}")
    return evaluate(algebra, formula, {}, algebra.elements)
