"""Tests for the formula language and its evaluation in F(B)."""

import pytest

from afa.errors import (
    ArityError,
    NotFiniteError,
    ParseError,
    UnassignedVariableError,
    UnboundVariableError,
    UnknownSymbolError,
)
from afa.formula import (
    BOTTOM,
    TOP,
    And,
    App,
    Eq,
    Exists,
    Forall,
    Is,
    Not,
    Or,
    Var,
    conjunction,
    disjunction,
    evaluate,
    evaluate_qf,
    free_vars,
    is_quantifier_free,
    model_check,
    parse_formula,
    quantifier_depth,
    substitute,
)
from afa.free_extension import build_partial_algebra, enumerate_fb_terms


@pytest.fixture
def free_algebra(free_unary):
    return build_partial_algebra(free_unary)


@pytest.fixture
def swap_algebra(swap):
    return build_partial_algebra(swap)


class TestParseFormula:
    """Tests for parse_formula."""

    def test_existential(self, free_algebra):
        """Test an existential equation with a constant."""
        formula = parse_formula("exists y. f(y) = a", free_algebra)
        a = free_algebra.constants["a"]
        assert formula == Exists(("y",), Eq(App("f", (Var("y"),)), a))
        assert str(formula) == "exists y. f(y) = [a]"

    def test_connectives(self, free_algebra):
        """Test negation, disequations and testers."""
        formula = parse_formula("is_f(x) & not x = a | x != f(a)", free_algebra)
        assert isinstance(formula, Or)
        left, right = formula.parts
        assert isinstance(left, And)
        assert left.parts[0] == Is("f", Var("x"))
        assert isinstance(left.parts[1], Not)
        assert str(right) == "x != f([a])"

    def test_quantifier_scope(self, free_algebra):
        """Test that a quantifier extends as far right as possible."""
        formula = parse_formula("exists x y. x = a & y = x", free_algebra)
        assert isinstance(formula, Exists)
        assert formula.names == ("x", "y")
        assert isinstance(formula.body, And)

    def test_nested_quantifiers(self, free_algebra):
        """Test alternating quantifiers."""
        formula = parse_formula("forall x. (x = a | exists y. x = f(y))", free_algebra)
        assert isinstance(formula, Forall)
        assert quantifier_depth(formula) == 2
        assert free_vars(formula) == frozenset()

    def test_element_literal(self, gamma_ex):
        """Test naming B elements by bracketed ground terms."""
        algebra = build_partial_algebra(gamma_ex)
        formula = parse_formula("x = [f(b,c)]", algebra)
        assert formula == Eq(Var("x"), algebra.constants["a"])

    def test_constants_true_false(self, free_algebra):
        """Test the truth constants."""
        assert parse_formula("true", free_algebra) == TOP
        assert parse_formula("!false", free_algebra) == Not(BOTTOM)

    @pytest.mark.parametrize(
        ("text", "error"),
        [
            ("f = a", ArityError),
            ("f(a, a) = a", ArityError),
            ("g(a) = a", UnknownSymbolError),
            ("is_g(a)", ParseError),
            ("exists a. true", ParseError),
            ("[x] = a", ParseError),
            ("[f(a)] = a", ParseError),
            ("x = ", ParseError),
        ],
    )
    def test_errors(self, free_algebra, text, error):
        """Test that malformed formulas raise the matching error."""
        with pytest.raises(error):
            parse_formula(text, free_algebra)

    def test_sentence_required(self, free_algebra):
        """Test that sentences may not have free variables."""
        with pytest.raises(UnboundVariableError):
            parse_formula("exists y. x = f(y)", free_algebra, sentence=True)


class TestFormulaHelpers:
    """Tests for building and transforming formulas."""

    def test_conjunction(self):
        """Test flattening and the neutral elements."""
        x = Eq(Var("x"), Var("y"))
        y = Is("f", Var("x"))
        assert conjunction([]) == TOP
        assert conjunction([TOP, x]) == x
        assert conjunction([x, BOTTOM]) == BOTTOM
        assert conjunction([And((x, y)), x]) == And((x, y))

    def test_disjunction(self):
        """Test flattening and the neutral elements."""
        x = Eq(Var("x"), Var("y"))
        assert disjunction([]) == BOTTOM
        assert disjunction([BOTTOM, x]) == x
        assert disjunction([x, TOP]) == TOP

    def test_substitute_respects_binding(self):
        """Test that bound occurrences are not replaced."""
        formula = And((Eq(Var("x"), Var("z")), Exists(("x",), Eq(Var("x"), Var("z")))))
        result = substitute(formula, {"x": Var("w")})
        assert result == And((Eq(Var("w"), Var("z")), Exists(("x",), Eq(Var("x"), Var("z")))))

    def test_free_vars_and_quantifiers(self):
        """Test free variables and quantifier detection."""
        formula = Exists(("y",), Eq(Var("x"), App("f", (Var("y"),))))
        assert free_vars(formula) == frozenset({"x"})
        assert not is_quantifier_free(formula)
        assert is_quantifier_free(formula.body)


class TestEvaluate:
    """Tests for evaluate, evaluate_qf and model_check."""

    def test_finite_algebra(self, swap_algebra):
        """Test sentences over the two-element swap algebra."""
        assert swap_algebra.is_closed
        assert model_check(swap_algebra, parse_formula("forall x. f(f(x)) = x", swap_algebra))
        assert not model_check(swap_algebra, parse_formula("exists x. f(x) = x", swap_algebra))
        assert not model_check(swap_algebra, parse_formula("exists x. is_f(x)", swap_algebra))

    def test_valuation(self, free_algebra):
        """Test a quantifier-free formula under a valuation."""
        a = free_algebra.constants["a"]
        formula = parse_formula("x != a & is_f(x)", free_algebra)
        stuck = enumerate_fb_terms(free_algebra, 1)[1]
        assert evaluate_qf(free_algebra, formula, {"x": stuck})
        assert not evaluate_qf(free_algebra, formula, {"x": a})

    def test_explicit_domain(self, free_algebra):
        """Test quantifiers over a finite part of an infinite F(B)."""
        domain = enumerate_fb_terms(free_algebra, 3)
        assert not evaluate(
            free_algebra, parse_formula("exists y. f(y) = a", free_algebra), domain=domain
        )
        stuck_exists = parse_formula("exists y. is_f(y)", free_algebra)
        assert evaluate(free_algebra, stuck_exists, domain=domain)

    def test_infinite_without_domain(self, free_algebra):
        """Test that quantifiers over an infinite F(B) need a domain."""
        formula = parse_formula("exists y. is_f(y)", free_algebra)
        with pytest.raises(NotFiniteError):
            evaluate(free_algebra, formula)
        with pytest.raises(NotFiniteError):
            model_check(free_algebra, formula)

    def test_errors(self, free_algebra, swap_algebra):
        """Test missing values, quantifiers in evaluate_qf and open sentences."""
        with pytest.raises(UnassignedVariableError):
            evaluate_qf(free_algebra, parse_formula("x = a", free_algebra))
        with pytest.raises(ValueError):
            evaluate_qf(swap_algebra, parse_formula("exists x. x = a", swap_algebra))
        with pytest.raises(UnboundVariableError):
            model_check(swap_algebra, parse_formula("x = a", swap_algebra))
