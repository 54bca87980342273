"""Tests for quantifier elimination and the decision procedure."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from afa.errors import BudgetExhaustedError, UnboundVariableError
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
    Var,
    evaluate,
    evaluate_qf,
    is_quantifier_free,
    model_check,
    parse_formula,
)
from afa.free_extension import build_partial_algebra, enumerate_fb_terms
from afa.problem import parse_problem
from afa.qe import (
    QuantifierDomain,
    QuantifierEliminator,
    decide_sentence,
    eliminate,
    negate_standard,
    special_violations,
    to_standard,
)
from afa.terms import Signature
from tests.strategies import body_texts, existential_texts, sentence_texts

FREE_UNARY_SIG = Signature({"f": 1}, ["a"])

FINITE_PROBLEMS = (
    "fun f 1; const a; eq f(a) = a;",
    "fun f 1; const a b; eq f(a) = b; eq f(b) = a;",
    "fun f 2; const a b; eq f(a,a) = a; eq f(a,b) = b; eq f(b,a) = b; eq f(b,b) = a;",
    "fun f 1; fun g 1; const a; eq f(a) = a; eq g(a) = f(a);",
)

INFINITE_UNARY_PROBLEMS = (
    "fun f 1; const a;",
    "fun f 1; const a b; eq f(a) = b;",
)

EXISTENTIAL_PROBLEMS = (*INFINITE_UNARY_PROBLEMS, "fun f 1; fun g 1; const a;")


@pytest.fixture
def free_algebra(free_unary):
    return build_partial_algebra(free_unary)


def _decide(gamma, text: str, **kwargs) -> bool:
    algebra = build_partial_algebra(gamma)
    return decide_sentence(gamma, parse_formula(text, algebra, sentence=True), **kwargs)


class TestDecideSentence:
    """Tests for decide_sentence on infinite algebras."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("exists y. f(y) = a", False),
            ("exists y. f(y) = f(a)", True),
            ("forall x. x = a | is_f(x)", True),
            ("forall x. is_f(x)", False),
            ("forall x. exists y. x = a | x = f(y)", True),
            ("exists x. x != a & !is_f(x)", False),
            ("exists x y. x != y & is_f(x) & is_f(y)", True),
            ("forall x. f(x) != x", True),
        ],
    )
    def test_free_unary(self, free_unary, text, expected):
        """Test sentences over the free algebra a, f(a), f(f(a)), ..."""
        assert _decide(free_unary, text) is expected

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("exists y. f(b,y) = a", True),
            ("exists y. f(y,y) = a", False),
            ("exists y. f(y,b) = c", True),
            ("forall x. x != b | !is_f(x)", True),
        ],
    )
    def test_example(self, gamma_ex, text, expected):
        """Test sentences over the example presentation."""
        assert _decide(gamma_ex, text) is expected

    def test_budget(self, gamma_ex):
        """Test that a tiny budget is exhausted."""
        with pytest.raises(BudgetExhaustedError):
            _decide(gamma_ex, "forall x. exists y. forall z. f(x,y) != z | is_f(z)", budget=5)

    def test_open_formula(self, free_unary, free_algebra):
        """Test that deciding needs a sentence."""
        formula = parse_formula("exists y. x = f(y)", free_algebra)
        with pytest.raises(UnboundVariableError):
            decide_sentence(free_unary, formula)

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_agrees_with_model_check(self, data):
        """Test decisions on finite algebras against exhaustive evaluation."""
        problem = parse_problem(data.draw(st.sampled_from(FINITE_PROBLEMS)))
        algebra = build_partial_algebra(problem.equations)
        assert algebra.is_closed
        text = data.draw(sentence_texts(problem.signature))
        formula = parse_formula(text, algebra, sentence=True)
        assert decide_sentence(problem.equations, formula) == model_check(algebra, formula)

    @settings(max_examples=100, deadline=None)
    @given(existential_texts(FREE_UNARY_SIG))
    def test_witness_in_free_unary(self, text):
        """Test that a witness found by enumeration makes the sentence true."""
        problem = parse_problem("fun f 1; const a;")
        algebra = build_partial_algebra(problem.equations)
        formula = parse_formula(text, algebra, sentence=True)
        if evaluate(algebra, formula, domain=enumerate_fb_terms(algebra, 3)):
            assert decide_sentence(problem.equations, formula)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_witness_in_example(self, data):
        """Test that a witness of height at most one makes the sentence true."""
        problem = parse_problem("fun f 2; const a b c; eq a = f(b,c); eq c = f(a,b);")
        algebra = build_partial_algebra(problem.equations)
        text = data.draw(existential_texts(problem.signature, names=("x",)))
        formula = parse_formula(text, algebra, sentence=True)
        if evaluate(algebra, formula, domain=enumerate_fb_terms(algebra, 1)):
            assert decide_sentence(problem.equations, formula)

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_existential_needs_small_witness(self, data):
        """Test that a true existential sentence has a witness of height at most four."""
        problem = parse_problem(data.draw(st.sampled_from(EXISTENTIAL_PROBLEMS)))
        algebra = build_partial_algebra(problem.equations)
        text = data.draw(existential_texts(problem.signature))
        formula = parse_formula(text, algebra, sentence=True)
        domain = enumerate_fb_terms(algebra, 4)
        assert decide_sentence(problem.equations, formula) == evaluate(
            algebra, formula, domain=domain
        )


class TestEliminate:
    """Tests for eliminate, to_standard and negate_standard."""

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_sentences_become_quantifier_free(self, data):
        """Test that eliminating a sentence leaves no quantifier."""
        problem = parse_problem(data.draw(st.sampled_from(("fun f 1; const a;", *FINITE_PROBLEMS))))
        algebra = build_partial_algebra(problem.equations)
        text = data.draw(sentence_texts(problem.signature))
        result = eliminate(algebra, parse_formula(text, algebra, sentence=True))
        assert is_quantifier_free(result)
        evaluate_qf(algebra, result)

    def test_open_formula_keeps_special(self, free_algebra):
        """Test that x = f(y) under ∃y stays as it is."""
        result = eliminate(free_algebra, parse_formula("exists y. x = f(y)", free_algebra))
        assert str(result) == "exists y. x = f(y)"
        assert special_violations(result) == []

        domain = enumerate_fb_terms(free_algebra, 2)
        a, stuck = domain[0], domain[1]
        assert evaluate(free_algebra, result, {"x": stuck}, domain)
        assert not evaluate(free_algebra, result, {"x": a}, domain)

    @settings(max_examples=100, deadline=None)
    @given(body_texts(FREE_UNARY_SIG, ("x", "y")))
    def test_to_standard_is_standard(self, body):
        """Test that to_standard yields special formulas only."""
        problem = parse_problem("fun f 1; const a;")
        algebra = build_partial_algebra(problem.equations)
        result = to_standard(algebra, parse_formula(f"exists y. ({body})", algebra))
        assert special_violations(result) == []

    def test_bound_variable_equation(self, free_algebra):
        """Test that ∃y. x = y is eliminated to true."""
        formula = parse_formula("exists y. x = y", free_algebra)
        assert eliminate(free_algebra, formula) == TOP
        assert to_standard(free_algebra, formula) == TOP
        assert negate_standard(free_algebra, formula) == BOTTOM

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_open_formulas_keep_meaning(self, data):
        """Test eliminate, to_standard and negate_standard under every small valuation."""
        problem = parse_problem(data.draw(st.sampled_from(INFINITE_UNARY_PROBLEMS)))
        algebra = build_partial_algebra(problem.equations)
        body = data.draw(body_texts(problem.signature, ("x", "y", "z")))
        formula = parse_formula(f"exists y. ({body})", algebra)

        standard = to_standard(algebra, formula)
        negated = negate_standard(algebra, standard)
        eliminated = eliminate(algebra, formula)
        assert special_violations(negated) == []

        domain = enumerate_fb_terms(algebra, 6)
        for x, z in itertools.product(enumerate_fb_terms(algebra, 2), repeat=2):
            valuation = {"x": x, "z": z}
            expected = evaluate(algebra, formula, valuation, domain)
            assert evaluate(algebra, standard, valuation, domain) == expected
            assert evaluate(algebra, eliminated, valuation, domain) == expected
            assert evaluate(algebra, negated, valuation, domain) != expected

    def test_negate_standard(self, free_algebra):
        """Test the negation of a special formula."""
        special = parse_formula("exists y. x = f(y)", free_algebra)
        negated = negate_standard(free_algebra, special)
        assert special_violations(negated) == []

        domain = enumerate_fb_terms(free_algebra, 3)
        for value in domain:
            valuation = {"x": value}
            assert evaluate(free_algebra, negated, valuation, domain) != evaluate(
                free_algebra, special, valuation, domain
            )


class TestQuantifierEliminator:
    """Tests for the eliminator object."""

    def test_budget_validation(self, free_algebra):
        """Test that the budget must be positive."""
        with pytest.raises(ValueError):
            QuantifierEliminator(free_algebra, 0)

    def test_prepare_renames_duplicates(self, free_algebra):
        """Test that an inner quantifier reusing a name is renamed apart."""
        formula = parse_formula("exists x. (x = a & exists x. is_f(x))", free_algebra)
        prepared = QuantifierEliminator(free_algebra).prepare(formula)
        assert isinstance(prepared, Exists)
        assert prepared.names == ("x",)
        inner = prepared.body.parts[1]
        assert isinstance(inner, Exists)
        assert inner.names != ("x",)
        assert inner.names[0].startswith("x'")

    def test_prepare_avoids_free_names(self, free_algebra):
        """Test that a bound name equal to a free variable is renamed."""
        formula = parse_formula("x = a & exists x. is_f(x)", free_algebra)
        prepared = QuantifierEliminator(free_algebra).prepare(formula)
        assert prepared.parts[1].names != ("x",)

    def test_classify(self, free_algebra, swap):
        """Test the three domains of a solved bound variable."""
        eliminator = QuantifierEliminator(free_algebra)
        y = Var("y")
        assert eliminator.classify("y", frozenset()) is QuantifierDomain.INFINITE
        assert (
            eliminator.classify("y", frozenset({Not(Is("f", y))})) is QuantifierDomain.EXACTLY_B
        )
        assert (
            eliminator.classify("y", frozenset({Is("f", y), Not(Is("f", y))}))
            is QuantifierDomain.EMPTY
        )
        closed = QuantifierEliminator(build_partial_algebra(swap))
        assert closed.classify("y", frozenset()) is QuantifierDomain.EXACTLY_B
        assert closed.classify("y", frozenset({Is("f", y)})) is QuantifierDomain.EMPTY


class TestSpecialViolations:
    """Tests for special_violations."""

    def test_special(self):
        """Test a well-formed special formula."""
        formula = Exists(("y",), And((Eq(Var("x"), App("f", (Var("y"),))), Is("f", Var("y")))))
        assert special_violations(formula) == []

    @pytest.mark.parametrize(
        "formula",
        [
            Forall(("y",), Eq(Var("x"), Var("y"))),
            Exists(("y",), Eq(Var("y"), App("f", (Var("x"),)))),
            Exists(("y",), Eq(Var("x"), App("f", (Var("x"), Var("y"))))),
            Exists(
                ("y",),
                And((Eq(Var("x"), App("f", (Var("y"),))), Not(Eq(Var("x"), Var("z"))))),
            ),
            Exists(("y",), Is("f", Var("x"))),
            Not(And((Eq(Var("x"), Var("y")), Is("f", Var("x"))))),
        ],
    )
    def test_violations(self, formula):
        """Test formulas that are not standard."""
        assert special_violations(formula)
