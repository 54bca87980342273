"""Types of terms, reduced typed representations and canonical representatives.

A term has type i when it is ∼_Γ-equal to a member of the i-th connected component of G_Γ,
the graph on the sides of Γ whose edges join F_Γ-equal sides. Types are numbered from 1 in the
term order of their representatives; untyped terms have no type.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx
from loguru import logger

from .congruence import Presentation, presentation_of
from .terms import EquationSet, Position, Signature, Term, format_position, term_order_key


@dataclass(frozen=True)
class TypeAssignment:
    """The components of G_Γ and their representatives.

    Args:
        components: Members of each component, component i at index i-1, in term order
        representatives: The term-order minimum of each component
        keys: Presentation class key of each component
    """

    components: tuple[tuple[Term, ...], ...]
    representatives: tuple[Term, ...]
    keys: tuple[int, ...]
    _index_of_key: dict[int, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._index_of_key.update({key: index + 1 for index, key in enumerate(self.keys)})

    @property
    def count(self) -> int:
        return len(self.components)

    def members(self, index: int) -> tuple[Term, ...]:
        return self.components[index - 1]

    def representative(self, index: int) -> Term:
        return self.representatives[index - 1]

    def index_of_key(self, key: int) -> int | None:
        return self._index_of_key.get(key)


@dataclass(frozen=True)
class ReducedTree:
    """r(t): positions labeled with Σ symbols, or with type indices at typed leaves."""

    nodes: tuple[tuple[Position, str | int], ...]

    def as_dict(self) -> dict[Position, str | int]:
        return dict(self.nodes)

    def typed_leaves(self) -> list[tuple[Position, int]]:
        return [(position, label) for position, label in self.nodes if isinstance(label, int)]

    def describe(self, max_arity: int = 10) -> str:
        """Position map in the form "ε:f 0:b 1:<2>"."""
        return " ".join(
            f"{format_position(position, max_arity)}:"
            + (f"<{label}>" if isinstance(label, int) else label)
            for position, label in self.nodes
        )


@lru_cache(maxsize=128)
def compute_types(gamma: EquationSet) -> TypeAssignment:
    """Number the connected components of G_Γ.

    Returns:
        The type assignment; k = 0 when Γ is empty
    """
    presentation = presentation_of(gamma)
    sides = gamma.sides()

    graph = nx.Graph()
    graph.add_nodes_from(sides)
    for index, left in enumerate(sides):
        for right in sides[index + 1 :]:
            if presentation.equal(left, right):
                graph.add_edge(left, right)

    components = [sorted(members, key=term_order_key) for members in nx.connected_components(graph)]
    components.sort(key=lambda members: term_order_key(members[0]))

    types = TypeAssignment(
        components=tuple(tuple(members) for members in components),
        representatives=tuple(members[0] for members in components),
        keys=tuple(presentation.class_key(members[0]) for members in components),
    )
    logger.debug(f"Found {types.count} type(s) among {len(sides)} side(s)")
    return types


def type_of(gamma: EquationSet, t: Term) -> int | None:
    """Index of the type of t, or None when t is untyped."""
    return compute_types(gamma).index_of_key(presentation_of(gamma).class_key(t))


def reduce_term(presentation: Presentation, types: TypeAssignment, t: Term) -> ReducedTree:
    """r(t) for an already built presentation and type assignment."""
    nodes: list[tuple[Position, str | int]] = [((), t.symbol)]
    stack = [((index,), arg) for index, arg in enumerate(t.args)]
    while stack:
        position, sub = stack.pop()
        index = types.index_of_key(presentation.class_key(sub))
        if index is not None:
            nodes.append((position, index))
            continue
        nodes.append((position, sub.symbol))
        stack.extend((position + (child,), arg) for child, arg in enumerate(sub.args))
    return ReducedTree(tuple(sorted(nodes)))


def reduced_rep(gamma: EquationSet, t: Term) -> ReducedTree:
    """Reduced typed representation r(t).

    The root keeps its Σ symbol; every maximal typed strict subterm becomes a leaf labeled
    with its type index; the untyped part keeps its symbols.
    """
    return reduce_term(presentation_of(gamma), compute_types(gamma), t)


def graft(tree: ReducedTree, types: TypeAssignment, sig: Signature) -> Term:
    """Replace every typed leaf of tree by the representative of its type."""
    labels = tree.as_dict()

    def build(position: Position) -> Term:
        label = labels[position]
        if isinstance(label, int):
            return types.representative(label)
        return Term(label, [build(position + (index,)) for index in range(sig.arity(label))])

    return build(())


def canonical_rep(gamma: EquationSet, t: Term) -> Term:
    """Canonical representative rep(t): equal for two terms exactly when they are ∼_Γ-equal.

    A typed term is represented by the representative of its type; otherwise the
    representatives are grafted onto the typed leaves of r(t).
    """
    types = compute_types(gamma)
    presentation = presentation_of(gamma)
    index = types.index_of_key(presentation.class_key(t))
    if index is not None:
        return types.representative(index)
    return graft(reduce_term(presentation, types, t), types, gamma.signature)
