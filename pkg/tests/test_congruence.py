"""Tests for the congruence closure."""

import time

import pytest
from hypothesis import given, settings

from afa.congruence import (
    Presentation,
    build_r_gamma,
    close,
    decide_equal,
    extend_with_terms,
    presentation_of,
)
from afa.errors import SignatureMismatchError
from afa.terms import EquationSet, Signature, Term
from tests.conftest import A, B, C, f
from tests.strategies import presentation_and_terms


def naive_equal(gamma: EquationSet, s: Term, t: Term) -> bool:
    """Congruence closure by fixpoint iteration over all subterm pairs."""
    terms = {sub for side in gamma.sides() + (s, t) for sub in side.subterms()}
    label = {term: index for index, term in enumerate(terms)}

    def join(u: Term, v: Term) -> bool:
        old, new = label[v], label[u]
        if old == new:
            return False
        for term, current in label.items():
            if current == old:
                label[term] = new
        return True

    for left, right in gamma:
        join(left, right)

    changed = True
    while changed:
        changed = False
        for u in terms:
            for v in terms:
                if (
                    u.symbol == v.symbol
                    and u.args
                    and all(label[x] == label[y] for x, y in zip(u.args, v.args))
                ):
                    changed = join(u, v) or changed
    return label[s] == label[t]


class TestDecideEqual:
    """Tests for decide_equal."""

    def test_example(self, gamma_ex):
        """Test a ~ f(b,c) ~ f(b,f(a,b))."""
        assert decide_equal(gamma_ex, A, f(B, f(A, B)))
        assert decide_equal(gamma_ex, f(A, A), f(f(B, C), A))

    def test_example_separated(self, gamma_ex):
        """Test classes the example keeps apart."""
        assert not decide_equal(gamma_ex, A, C)
        assert not decide_equal(gamma_ex, A, B)
        assert not decide_equal(gamma_ex, f(B, B), B)

    def test_free_algebra(self, free_unary):
        """Test that without equations only identical terms are equal."""
        assert decide_equal(free_unary, f(A), f(A))
        assert not decide_equal(free_unary, f(A), A)

    def test_congruence(self, sig_ex):
        """Test that equal arguments give equal applications."""
        gamma = EquationSet(sig_ex, [(A, B)])
        assert decide_equal(gamma, f(A, C), f(B, C))
        assert not decide_equal(gamma, f(A, C), f(C, A))

    def test_signature_mismatch(self, gamma_ex):
        """Test that terms over another signature are rejected."""
        with pytest.raises(SignatureMismatchError):
            decide_equal(gamma_ex, A, Term("g", [A]))

    @settings(max_examples=100, deadline=None)
    @given(presentation_and_terms(count=2))
    def test_agrees_with_fixpoint(self, case):
        """Test agreement with a naive fixpoint closure."""
        gamma, s, t = case
        assert decide_equal(gamma, s, t) == naive_equal(gamma, s, t)

    @settings(max_examples=100, deadline=None)
    @given(presentation_and_terms(count=3))
    def test_equivalence_laws(self, case):
        """Test reflexivity, symmetry and transitivity."""
        gamma, s, t, u = case
        assert decide_equal(gamma, s, s)
        assert decide_equal(gamma, s, t) == decide_equal(gamma, t, s)
        if decide_equal(gamma, s, t) and decide_equal(gamma, t, u):
            assert decide_equal(gamma, s, u)

    @settings(max_examples=100, deadline=None)
    @given(presentation_and_terms(count=2))
    def test_presentation_agrees(self, case):
        """Test that the cached presentation answers like the graph route."""
        gamma, s, t = case
        assert presentation_of(gamma).equal(s, t) == decide_equal(gamma, s, t)

    @settings(max_examples=50, deadline=None)
    @given(presentation_and_terms(count=2))
    def test_equations_hold(self, case):
        """Test that every equation of Γ holds, also below a function symbol."""
        gamma, s, _ = case
        sig = gamma.signature
        symbol = sorted(sig.functions)[0]
        for left, right in gamma:
            assert decide_equal(gamma, left, right)
            padding = [s] * (sig.arity(symbol) - 1)
            lifted = (Term(symbol, [left, *padding]), Term(symbol, [right, *padding]))
            assert decide_equal(gamma, *lifted)

    def test_many_large_equations(self):
        """Test 20 equations with sides of up to 200 nodes in well under a second."""
        sig = Signature({"f": 1, "g": 2}, ["a", "b"])

        def chain(count: int, base: Term) -> Term:
            for _ in range(count):
                base = Term("f", [base])
            return base

        equations = [
            (chain(150 + index, A), Term("g", [chain(100 - index, B), chain(index, A)]))
            for index in range(20)
        ]
        gamma = EquationSet(sig, equations)
        query = Term("g", [chain(100, B), A])

        start = time.perf_counter()
        assert decide_equal(gamma, chain(150, A), query)
        assert not decide_equal(gamma, chain(199, A), chain(198, B))
        assert time.perf_counter() - start < 1.0


class TestClosure:
    """Tests for R_Γ and its closure."""

    def test_r_gamma(self, gamma_ex):
        """Test one tree per distinct side."""
        graph = build_r_gamma(gamma_ex)
        assert len(graph) == 8
        assert len(graph.roots) == 4
        assert sorted(graph.directed_edges()) == [(1, 2), (1, 3), (5, 6), (5, 7)]

    def test_classes(self, gamma_ex):
        """Test the closure classes of the example."""
        result = close(build_r_gamma(gamma_ex))
        classes = result.classes()
        assert [0, 1, 6] in classes
        assert [2, 7] in classes
        assert [3, 4, 5] in classes
        assert len(classes) == 3

    def test_extend_with_terms(self, gamma_ex):
        """Test that R_Γ(s,t) copies R_Γ and adds both trees."""
        graph = build_r_gamma(gamma_ex)
        extended = extend_with_terms(graph, B, f(B, B))
        assert len(extended) == len(graph) + 4
        assert len(graph) == 8


class TestPresentation:
    """Tests for class keys of a presentation."""

    def test_fresh_keys_are_stable(self, free_unary):
        """Test that a term outside R_Γ keeps its fresh key and witness."""
        presentation = Presentation(free_unary)
        key = presentation.class_key(f(f(A)))
        assert key < 0
        assert presentation.class_key(f(f(A))) == key
        assert presentation.apply_key("f", [presentation.class_key(f(A))]) == key
        assert presentation.witness(key) == f(f(A))

    def test_node_keys(self, loop_unary):
        """Test that terms of a cyclic class share the key of its node."""
        presentation = Presentation(loop_unary)
        key = presentation.class_key(A)
        assert key >= 0
        assert presentation.class_key(f(f(f(A)))) == key
