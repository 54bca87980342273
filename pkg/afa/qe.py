"""Quantifier elimination for F(B) with tester predicates.

Existential formulas are rewritten into standard formulas: disjunctions and conjunctions of
quantifier-free parts and special formulas ∃ȳ(...) whose equations all have the form x = t(ȳ)
with x free and occurring nowhere else. Negations of standard formulas are pushed down to the
special formulas and rewritten back into standard form, so that quantifiers can be removed
from the innermost out. For a sentence the result is a variable-free formula.

A block ∃ȳ(l1 ∧ ... ∧ ln) is solved by case analysis. Every variable occurring below a
function symbol is split into "equal to some element of B" or "outside B"; once that is done
every application containing a variable is a stuck term, and equations and disequations are
decided structurally (unification with occurs check, decomposition). The bound variables that
remain are classified by their tester atoms: no possible value, exactly the elements of B, or
infinitely many values.
"""

import itertools
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

from loguru import logger

from .errors import BudgetExhaustedError, UnboundVariableError
from .formula import (
    BOTTOM,
    TOP,
    And,
    App,
    Bottom,
    Eq,
    Exists,
    Forall,
    Formula,
    Is,
    Not,
    OpenTerm,
    Or,
    Top,
    Var,
    conjunction,
    disjunction,
    evaluate_qf,
    free_vars,
    is_ground,
    is_literal,
    literal_terms,
    rename_bound,
    substitute,
    term_vars,
)
from .free_extension import BElement, PartialAlgebra, build_partial_algebra
from .terms import EquationSet

DEFAULT_BUDGET = 200_000

# Bound variables and literals of a conjunction ∃ȳ(l1 ∧ ... ∧ ln)
State = tuple[frozenset[str], frozenset[Formula]]


class QuantifierDomain(Enum):
    """The values a bound variable may take given its tester atoms."""

    EMPTY = "empty"
    EXACTLY_B = "exactly-B"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Special:
    """∃ȳ over a conjunction of literals."""

    bound: tuple[str, ...]
    literals: tuple[Formula, ...]

    def to_formula(self) -> Formula:
        body = conjunction(self.literals)
        return Exists(self.bound, body) if self.bound else body

    @classmethod
    def of(cls, formula: Formula) -> "Special | None":
        """Read an existential formula over a conjunction of literals, None for anything else."""
        if not isinstance(formula, Exists):
            return None
        body = formula.body
        literals = body.parts if isinstance(body, And) else (body,)
        if not all(is_literal(literal) for literal in literals):
            return None
        return cls(formula.names, tuple(literals))


def _literal_vars(literal: Formula) -> frozenset[str]:
    return frozenset().union(*(term_vars(t) for t in literal_terms(literal)))


def _vars_of(literals: Iterable[Formula]) -> frozenset[str]:
    return frozenset().union(*(_literal_vars(literal) for literal in literals))


def _rank(t: OpenTerm) -> tuple[int, str]:
    if isinstance(t, Var):
        return (0, t.name)
    return (1 if isinstance(t, App) else 2, str(t))


def _eq(left: OpenTerm, right: OpenTerm) -> Eq:
    """Equation with a variable on the left whenever there is one."""
    return Eq(left, right) if _rank(left) <= _rank(right) else Eq(right, left)


def _neq(left: OpenTerm, right: OpenTerm) -> Formula:
    return Not(_eq(left, right))


def _negate_literal(literal: Formula) -> Formula:
    return literal.body if isinstance(literal, Not) else Not(literal)


def _subst(literals: Iterable[Formula], mapping: dict[str, OpenTerm]) -> frozenset[Formula]:
    return frozenset(substitute(literal, mapping) for literal in literals)


def _sorted(literals: Iterable[Formula]) -> list[Formula]:
    return sorted(literals, key=str)


def _check_special(bound: frozenset[str], literals: tuple[Formula, ...]) -> list[str]:
    violations = []
    for literal in literals:
        if isinstance(literal, Eq):
            left, right = literal.left, literal.right
            if not isinstance(left, Var) or left.name in bound:
                violations.append(f"'{literal}' is not an equation for a free variable")
            elif left.name in term_vars(right):
                violations.append(f"'{left}' occurs in its own right-hand side in '{literal}'")
            elif any(left.name in _literal_vars(other) for other in literals if other != literal):
                violations.append(f"'{left}' occurs more than once in the special formula")
        elif isinstance(literal, Not) and isinstance(literal.body, Eq):
            left, right = literal.body.left, literal.body.right
            if not isinstance(left, Var):
                violations.append(f"'{literal}' is not a disequation for a variable")
            elif left.name in term_vars(right):
                violations.append(f"'{left}' occurs in its own right-hand side in '{literal}'")
        else:
            atom = literal.body if isinstance(literal, Not) else literal
            if not isinstance(atom, Is) or not (
                isinstance(atom.term, Var) and atom.term.name in bound
            ):
                violations.append(f"'{literal}' is not a tester atom on a bound variable")
    return violations


def special_violations(formula: Formula) -> list[str]:
    """Every way in which the quantified parts of a formula fail to be special formulas.

    An empty list means the formula is standard.
    """
    violations: list[str] = []

    def visit(node: Formula) -> None:
        if isinstance(node, Exists):
            special = Special.of(node)
            if special is None:
                violations.append(f"'{node}' is not a quantified conjunction of literals")
            else:
                violations.extend(_check_special(frozenset(special.bound), special.literals))
        elif isinstance(node, Forall):
            violations.append(f"'{node}' is universally quantified")
        elif isinstance(node, Not):
            if not is_literal(node):
                violations.append(f"'{node}' negates a compound formula")
        elif isinstance(node, And | Or):
            for part in node.parts:
                visit(part)

    visit(formula)
    return violations


class QuantifierEliminator:
    """Rewrites formulas over one partial algebra B, drawing every step from a node budget.

    Args:
        algebra: The partial algebra B
        budget: Number of rewriting steps and case splits allowed

    Raises:
        ValueError: If the budget is not positive
    """

    def __init__(self, algebra: PartialAlgebra, budget: int = DEFAULT_BUDGET):
        if budget < 1:
            raise ValueError(f"QE budget must be positive, got {budget}")
        self.algebra = algebra
        self.budget = budget
        self.spent = 0
        self.functions = tuple(algebra.signature.functions)
        # Without stuck terms every variable ranges over B
        self.closed = algebra.is_closed
        self._taken: set[str] = set(algebra.signature.symbols)
        self._counter = itertools.count(1)
        self._solutions: dict[State, list[State]] = {}
        self._negations: dict[State, Formula] = {}

    def _spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.budget:
            raise BudgetExhaustedError(
                f"Quantifier elimination exceeded its budget of {self.budget} steps"
            )

    def _fresh(self, base: str) -> str:
        root = base.split("'")[0] or "v"
        while True:
            name = f"{root}'{next(self._counter)}"
            if name not in self._taken:
                self._taken.add(name)
                return name

    # Literal simplification

    def _fold(self, t: OpenTerm) -> OpenTerm:
        if not isinstance(t, App):
            return t
        args = tuple(self._fold(arg) for arg in t.args)
        if all(isinstance(arg, BElement) for arg in args):
            value = self.algebra.lookup(t.symbol, args)  # type: ignore[arg-type]
            if value is not None:
                return value
        return App(t.symbol, args)

    def _simplify_literal(self, literal: Formula) -> Formula:
        """Fold ground subterms and decide variable-free literals to TOP or BOTTOM."""
        negated = isinstance(literal, Not)
        atom = literal.body if isinstance(literal, Not) else literal

        if isinstance(atom, Eq):
            left, right = self._fold(atom.left), self._fold(atom.right)
            if left == right:
                value = True
            elif is_ground(left) and is_ground(right):
                # Folded ground terms are normal forms
                value = False
            else:
                equation = _eq(left, right)
                return Not(equation) if negated else equation
        elif isinstance(atom, Is):
            t = self._fold(atom.term)
            if not is_ground(t):
                tester = Is(atom.symbol, t)
                return Not(tester) if negated else tester
            value = isinstance(t, App) and t.symbol == atom.symbol
        else:
            raise TypeError(f"Not a literal: {literal!r}")

        return TOP if value != negated else BOTTOM

    def _simplify(self, literals: Iterable[Formula]) -> frozenset[Formula] | None:
        simplified = set()
        for literal in literals:
            result = self._simplify_literal(literal)
            if isinstance(result, Bottom):
                return None
            if not isinstance(result, Top):
                simplified.add(result)
        return frozenset(simplified)

    # Case analysis

    def _is_marked(self, name: str, literals: frozenset[Formula]) -> bool:
        """True when the variable is known to lie outside B."""
        v = Var(name)
        if any(isinstance(literal, Is) and literal.term == v for literal in literals):
            return True
        return all(Not(Eq(v, element)) in literals for element in self.algebra.elements)

    def _unmarked_app_var(self, literals: frozenset[Formula]) -> str | None:
        for literal in _sorted(literals):
            for t in literal_terms(literal):
                if isinstance(t, App):
                    for name in sorted(term_vars(t)):
                        if not self._is_marked(name, literals):
                            return name
        return None

    def _split(self, bound: frozenset[str], literals: frozenset[Formula], name: str) -> list[State]:
        v = Var(name)
        branches: list[State] = []
        for element in self.algebra.elements:
            mapped = _subst(literals, {name: element})
            if name in bound:
                branches.append((bound - {name}, mapped))
            else:
                branches.append((bound, mapped | {Eq(v, element)}))
        marks = frozenset(Not(Eq(v, element)) for element in self.algebra.elements)
        branches.append((bound, literals | marks))
        self._spend(len(branches))
        return branches

    def _testers(self, name: str, literals: frozenset[Formula]) -> tuple[set[str], set[str]]:
        v = Var(name)
        positives = {lit.symbol for lit in literals if isinstance(lit, Is) and lit.term == v}
        negatives = {
            lit.body.symbol
            for lit in literals
            if isinstance(lit, Not) and isinstance(lit.body, Is) and lit.body.term == v
        }
        return positives, negatives

    def _tester_clash(self, literals: frozenset[Formula]) -> bool:
        names = set()
        for literal in literals:
            atom = literal.body if isinstance(literal, Not) else literal
            if isinstance(atom, Is) and isinstance(atom.term, Var):
                names.add(atom.term.name)
        for name in sorted(names):
            positives, negatives = self._testers(name, literals)
            if len(positives) > 1 or positives & negatives:
                return True
            if negatives >= set(self.functions) and self._is_marked(name, literals):
                return True
        return False

    def _rewrite_equation(
        self, bound: frozenset[str], equation: Eq, rest: frozenset[Formula]
    ) -> list[State] | None:
        left, right = equation.left, equation.right
        if isinstance(left, Var):
            if left.name in term_vars(right):
                return []
            if left.name in bound:
                return [(bound - {left.name}, _subst(rest, {left.name: right}))]
            if isinstance(right, Var) and right.name in bound:
                return [(bound - {right.name}, _subst(rest, {right.name: left}))]
            if left.name in _vars_of(rest):
                return [(bound, _subst(rest, {left.name: right}) | {equation})]
            return None
        if isinstance(left, App) and isinstance(right, App):
            if left.symbol != right.symbol:
                return []
            return [(bound, rest | {_eq(a, b) for a, b in zip(left.args, right.args)})]
        # A stuck application never equals an element of B
        return []

    def _rewrite_disequation(
        self, bound: frozenset[str], equation: Eq, rest: frozenset[Formula]
    ) -> list[State] | None:
        left, right = equation.left, equation.right
        if isinstance(left, Var):
            if left.name in term_vars(right):
                return [(bound, rest)]
            return None
        if isinstance(left, App) and isinstance(right, App):
            if left.symbol != right.symbol:
                return [(bound, rest)]
            return [
                (bound, rest | {_neq(a, b)}) for a, b in zip(left.args, right.args) if a != b
            ]
        return [(bound, rest)]

    def _rewrite(self, bound: frozenset[str], literals: frozenset[Formula]) -> list[State] | None:
        """One structural step, or None when the state is solved."""
        for literal in _sorted(literals):
            rest = literals - {literal}
            outcome = None
            if isinstance(literal, Eq):
                outcome = self._rewrite_equation(bound, literal, rest)
            elif isinstance(literal, Not) and isinstance(literal.body, Eq):
                outcome = self._rewrite_disequation(bound, literal.body, rest)
            else:
                atom = literal.body if isinstance(literal, Not) else literal
                if isinstance(atom, Is) and isinstance(atom.term, App):
                    holds = (atom.term.symbol == atom.symbol) != isinstance(literal, Not)
                    outcome = [(bound, rest)] if holds else []
            if outcome is not None:
                return outcome

        if self._tester_clash(literals):
            return []
        unused = bound - _vars_of(literals)
        if unused:
            return [(bound - unused, literals)]
        return None

    def _solve(self, bound: frozenset[str], literals: frozenset[Formula]) -> list[State]:
        """Solved states whose disjunction is equivalent to ∃bound(⋀ literals)."""
        key = (bound, literals)
        cached = self._solutions.get(key)
        if cached is not None:
            return cached

        solved: list[State] = []
        seen: set[State] = set()
        work: list[State] = [key]
        while work:
            self._spend()
            state_bound, state_literals = work.pop()
            simplified = self._simplify(state_literals)
            if simplified is None:
                continue
            name = self._unmarked_app_var(simplified)
            if name is not None:
                work.extend(reversed(self._split(state_bound, simplified, name)))
                continue
            rewritten = self._rewrite(state_bound, simplified)
            if rewritten is not None:
                work.extend(reversed(rewritten))
                continue
            state = (state_bound, simplified)
            if state not in seen:
                seen.add(state)
                solved.append(state)

        self._solutions[key] = solved
        return solved

    def classify(self, name: str, literals: frozenset[Formula]) -> QuantifierDomain:
        """Classify the values a solved bound variable may take."""
        positives, negatives = self._testers(name, literals)
        if len(positives) > 1 or positives & negatives:
            domain = QuantifierDomain.EMPTY
        elif self.closed:
            domain = QuantifierDomain.EMPTY if positives else QuantifierDomain.EXACTLY_B
        elif positives:
            domain = QuantifierDomain.INFINITE
        elif negatives >= set(self.functions):
            domain = QuantifierDomain.EXACTLY_B
        else:
            domain = QuantifierDomain.INFINITE
        logger.debug(f"Domain of {name}: {domain.value}")
        return domain

    def _partition(
        self, bound: frozenset[str], literals: frozenset[Formula]
    ) -> tuple[list[Formula], frozenset[Formula]]:
        free = [literal for literal in literals if not _literal_vars(literal) & bound]
        return _sorted(free), literals - set(free)

    def _free_equation(self, bound: frozenset[str], literals: frozenset[Formula]) -> Eq | None:
        for literal in _sorted(literals):
            if (
                isinstance(literal, Eq)
                and isinstance(literal.left, Var)
                and literal.left.name not in bound
                and term_vars(literal.right) & bound
            ):
                return literal
        return None

    def _domains(
        self, bound: frozenset[str], literals: frozenset[Formula]
    ) -> dict[str, QuantifierDomain]:
        return {name: self.classify(name, literals) for name in sorted(bound)}

    def _resolve(self, bound: frozenset[str], literals: frozenset[Formula]) -> Formula:
        """Standard formula equivalent to ∃bound(⋀ literals) for a solved state."""
        if not literals:
            return TOP
        domains = self._domains(bound, literals)
        if QuantifierDomain.EMPTY in domains.values():
            return BOTTOM
        for name, domain in domains.items():
            if domain is QuantifierDomain.EXACTLY_B:
                return disjunction(
                    self._standard_block(bound - {name}, _subst(literals, {name: element}))
                    for element in self.algebra.elements
                )
        if self._free_equation(bound, literals) is not None:
            used = tuple(sorted(bound & _vars_of(literals)))
            return Special(used, tuple(_sorted(literals))).to_formula()
        # Infinitely many candidates per variable: values of distinct heights avoid every
        # disequation
        return TOP

    def _standard_block(self, bound: frozenset[str], literals: frozenset[Formula]) -> Formula:
        self._spend()
        parts = []
        for state_bound, state_literals in self._solve(bound, literals):
            free, rest = self._partition(state_bound, state_literals)
            parts.append(conjunction([*free, self._resolve(state_bound, rest)]))
        return disjunction(parts)

    # Disjunctive normal form with existential blocks

    def _rename(self, state: State, names: Iterable[str]) -> State:
        bound, literals = state
        mapping = {name: self._fresh(name) for name in sorted(names)}
        if not mapping:
            return state
        renamed = {old: Var(new) for old, new in mapping.items()}
        return (
            frozenset(mapping.get(name, name) for name in bound),
            _subst(literals, renamed),
        )

    def _merge(self, first: State, second: State) -> State:
        second = self._rename(second, second[0] & (first[0] | _vars_of(first[1])))
        first = self._rename(first, first[0] & _vars_of(second[1]))
        return (first[0] | second[0], first[1] | second[1])

    def _blocks(self, formula: Formula) -> list[State]:
        empty: frozenset = frozenset()
        if isinstance(formula, Top):
            return [(empty, empty)]
        if isinstance(formula, Bottom):
            return []
        if is_literal(formula):
            return [(empty, frozenset((formula,)))]
        if isinstance(formula, Not):
            return self._blocks(self.negate_standard(formula.body))
        if isinstance(formula, Or):
            return [block for part in formula.parts for block in self._blocks(part)]
        if isinstance(formula, And):
            blocks: list[State] = [(empty, empty)]
            for part in formula.parts:
                part_blocks = self._blocks(part)
                blocks = [self._merge(left, right) for left in blocks for right in part_blocks]
                self._spend(len(blocks))
            return blocks
        if isinstance(formula, Exists):
            names = frozenset(formula.names)
            result = []
            for block in self._blocks(formula.body):
                bound, literals = self._rename(block, block[0] & names)
                result.append((bound | names, literals))
            return result
        if isinstance(formula, Forall):
            return self._blocks(self._eliminate(formula))
        raise TypeError(f"Cannot rewrite {formula!r}")

    def _already_special(self, bound: frozenset[str], literals: frozenset[Formula]) -> bool:
        if not bound or not bound <= _vars_of(literals):
            return False
        # x = y with y bound is solved by substitution
        for literal in literals:
            if isinstance(literal, Eq) and any(
                isinstance(side, Var) and side.name in bound
                for side in (literal.left, literal.right)
            ):
                return False
        ordered = tuple(_sorted(literals))
        return (
            not _check_special(bound, ordered)
            and self._free_equation(bound, literals) is not None
        )

    def to_standard(self, formula: Formula) -> Formula:
        """Rewrite quantifier-free parts joined by ∧, ∨ and ∃ into standard form."""
        parts = []
        for bound, literals in self._blocks(formula):
            self._spend()
            if self._already_special(bound, literals):
                parts.append(Special(tuple(sorted(bound)), tuple(_sorted(literals))).to_formula())
            else:
                parts.append(self._standard_block(bound, literals))
        return disjunction(parts)

    # Negation

    def _negate_block(self, bound: frozenset[str], literals: frozenset[Formula]) -> Formula:
        """Standard formula equivalent to ¬∃bound(⋀ literals)."""
        key = (bound, literals)
        cached = self._negations.get(key)
        if cached is not None:
            return cached

        self._spend()
        parts = []
        for state_bound, state_literals in self._solve(bound, literals):
            free, rest = self._partition(state_bound, state_literals)
            negated = [_negate_literal(literal) for literal in free]
            parts.append(disjunction([*negated, self._negate_solved(state_bound, rest)]))
        result = conjunction(parts)
        self._negations[key] = result
        return result

    def _negate_solved(self, bound: frozenset[str], literals: frozenset[Formula]) -> Formula:
        if not literals:
            return BOTTOM
        domains = self._domains(bound, literals)
        if QuantifierDomain.EMPTY in domains.values():
            return TOP
        for name, domain in domains.items():
            if domain is QuantifierDomain.EXACTLY_B:
                return conjunction(
                    self._negate_block(bound - {name}, _subst(literals, {name: element}))
                    for element in self.algebra.elements
                )

        equation = self._free_equation(bound, literals)
        if equation is None:
            return BOTTOM

        x, t = equation.left, equation.right
        others = literals - {equation}
        if isinstance(t, Var):
            return self._negate_block(bound - {t.name}, _subst(others, {t.name: x}))
        if not isinstance(t, App):
            raise TypeError(f"Unexpected right-hand side in {equation}")

        # x is f(z̄) for unique z̄ exactly when Is_f(x)
        names = tuple(self._fresh("z") for _ in t.args)
        pattern = App(t.symbol, tuple(Var(name) for name in names))
        unmatched = self._negate_block(
            bound, others | {_eq(Var(name), arg) for name, arg in zip(names, t.args)}
        )
        matched = Exists(names, conjunction([Is(t.symbol, x), Eq(x, pattern), unmatched]))
        return disjunction([Not(Is(t.symbol, x)), self.to_standard(matched)])

    def negate_standard(self, formula: Formula) -> Formula:
        """Standard formula equivalent to the negation of a standard formula."""
        if isinstance(formula, Top):
            return BOTTOM
        if isinstance(formula, Bottom):
            return TOP
        if is_literal(formula):
            return _negate_literal(formula)
        if isinstance(formula, Not):
            return self._eliminate(formula.body)
        if isinstance(formula, And):
            return disjunction(self.negate_standard(part) for part in formula.parts)
        if isinstance(formula, Or):
            return conjunction(self.negate_standard(part) for part in formula.parts)
        if isinstance(formula, Exists):
            special = Special.of(formula)
            if special is None:
                return self.negate_standard(self.to_standard(formula))
            return self._negate_block(frozenset(special.bound), frozenset(special.literals))
        if isinstance(formula, Forall):
            return self.negate_standard(self._eliminate(formula))
        raise TypeError(f"Cannot negate {formula!r}")

    # Elimination

    def _eliminate(self, formula: Formula) -> Formula:
        if isinstance(formula, Top | Bottom):
            return formula
        if is_literal(formula):
            return self._simplify_literal(formula)
        if isinstance(formula, Not):
            return self.negate_standard(self._eliminate(formula.body))
        if isinstance(formula, And):
            return conjunction(self._eliminate(part) for part in formula.parts)
        if isinstance(formula, Or):
            return disjunction(self._eliminate(part) for part in formula.parts)
        if isinstance(formula, Exists):
            return self.to_standard(Exists(formula.names, self._eliminate(formula.body)))
        if isinstance(formula, Forall):
            negated = self.negate_standard(self._eliminate(formula.body))
            return self.negate_standard(self.to_standard(Exists(formula.names, negated)))
        raise TypeError(f"Cannot eliminate {formula!r}")

    def claim_names(self, formula: Formula) -> None:
        self._taken |= free_vars(formula)
        if isinstance(formula, Exists | Forall):
            self._taken |= set(formula.names)
            self.claim_names(formula.body)
        elif isinstance(formula, Not):
            self.claim_names(formula.body)
        elif isinstance(formula, And | Or):
            for part in formula.parts:
                self.claim_names(part)

    def prepare(self, formula: Formula) -> Formula:
        """Rename quantified variables apart; a name that is already unique is kept."""
        self.claim_names(formula)
        free = free_vars(formula)
        seen: set[str] = set()

        def choose(name: str) -> str:
            if name in seen or name in free:
                return self._fresh(name)
            seen.add(name)
            return name

        return rename_bound(formula, choose)

    def eliminate(self, formula: Formula) -> Formula:
        """Remove quantifiers from the innermost out; ∀ȳ is handled as ¬∃ȳ¬.

        A sentence yields a variable-free formula. A formula with free variables yields a
        standard formula whose only quantifiers belong to special formulas with an equation
        x = t(ȳ) for a free variable x.
        """
        result = self._eliminate(self.prepare(formula))
        logger.info(f"Eliminated quantifiers in {self.spent} step(s)")
        return result


def to_standard(
    algebra: PartialAlgebra, formula: Formula, budget: int = DEFAULT_BUDGET
) -> Formula:
    """Standard formula equivalent to an existential formula.

    Raises:
        BudgetExhaustedError: If the rewriting exceeds the budget
    """
    eliminator = QuantifierEliminator(algebra, budget)
    return eliminator.to_standard(eliminator.prepare(formula))


def negate_standard(
    algebra: PartialAlgebra, formula: Formula, budget: int = DEFAULT_BUDGET
) -> Formula:
    """Standard formula equivalent to the negation of a standard formula.

    Raises:
        BudgetExhaustedError: If the rewriting exceeds the budget
    """
    eliminator = QuantifierEliminator(algebra, budget)
    eliminator.claim_names(formula)
    return eliminator.negate_standard(formula)


def eliminate(algebra: PartialAlgebra, formula: Formula, budget: int = DEFAULT_BUDGET) -> Formula:
    """Quantifier elimination; see QuantifierEliminator.eliminate.

    Raises:
        BudgetExhaustedError: If the rewriting exceeds the budget
    """
    return QuantifierEliminator(algebra, budget).eliminate(formula)


def decide_sentence(gamma: EquationSet, formula: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """Decide whether F_Γ satisfies a sentence.

    Raises:
        UnboundVariableError: If the formula has free variables
        BudgetExhaustedError: If quantifier elimination exceeds the budget
    """
    unbound = free_vars(formula)
    if unbound:
        raise UnboundVariableError(f"Unbound variable(s): {', '.join(sorted(unbound))}")
    algebra = build_partial_algebra(gamma)
    result = eliminate(algebra, formula, budget)
    logger.debug(f"Quantifier-free form: {result}")
    return evaluate_qf(algebra, result)
