"""Class cardinality, intrinsic infinity, finiteness and isomorphism of almost free algebras."""

import itertools
import math
from dataclasses import dataclass, field

import networkx as nx
from loguru import logger
from tqdm import tqdm

from .canonical import ReducedTree, canonical_rep, compute_types, reduce_term
from .congruence import presentation_of
from .errors import NotFiniteError, SignatureMismatchError
from .terms import EquationSet, Position, Signature, Term, term_order_key

INFINITE = math.inf


@dataclass(frozen=True)
class TypedNode:
    """A node of R_Γ labeled with its type; type 0 marks an untyped node."""

    origin: Term
    symbol: str
    position: Position
    type_index: int


@dataclass(frozen=True)
class TypedMixedGraph:
    """R_Γ closed, with types added to the labels and every pair of same-type nodes joined."""

    nodes: tuple[TypedNode, ...]
    directed: frozenset[tuple[int, int]]
    undirected: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class SubtermAlgebra:
    """A finite set of terms with a (possibly partial) operation table on it.

    `table` maps (f, argument tuple) to the member the application is equal to.
    """

    members: tuple[Term, ...]
    table: dict[tuple[str, tuple[Term, ...]], Term] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)


def typed_graph(gamma: EquationSet) -> TypedMixedGraph:
    """Label every node of R_Γ with its type and add the same-type edges."""
    presentation = presentation_of(gamma)
    types = compute_types(gamma)
    closure = presentation.closure

    nodes = []
    for node in presentation.graph.nodes:
        index = types.index_of_key(presentation.class_key(node.subterm))
        nodes.append(TypedNode(node.term, node.symbol, node.position, index or 0))

    same_type = {
        (u, v)
        for u, left in enumerate(nodes)
        for v, right in enumerate(nodes)
        if u < v and left.type_index and left.type_index == right.type_index
    }
    return TypedMixedGraph(
        nodes=tuple(nodes),
        directed=frozenset(presentation.graph.directed_edges()),
        undirected=closure.edges() | same_type,
    )


def quotient_graph(gamma: EquationSet) -> nx.DiGraph:
    """Directed graph on the closure classes of R_Γ, with [v] -> [w] for every tree edge v -> w."""
    presentation = presentation_of(gamma)
    class_map = presentation.closure.class_map

    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(set(class_map)))
    graph.add_edges_from(
        (class_map[parent], class_map[kid]) for parent, kid in presentation.graph.directed_edges()
    )
    return graph


def _classes_reaching_cycles(graph: nx.DiGraph) -> set[int]:
    on_cycle: set[int] = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1 or any(graph.has_edge(node, node) for node in component):
            on_cycle.update(component)

    reaching = set(on_cycle)
    for node in on_cycle:
        reaching.update(nx.ancestors(graph, node))
    return reaching


def cyclic_types(gamma: EquationSet) -> set[int]:
    """Types whose quotient class reaches a directed cycle (self-loops included)."""
    types = compute_types(gamma)
    reaching = _classes_reaching_cycles(quotient_graph(gamma))
    cyclic = {index for index, key in enumerate(types.keys, start=1) if key in reaching}
    logger.debug(f"Cyclic types: {sorted(cyclic)}")
    return cyclic


class _ClassCounter:
    def __init__(self, gamma: EquationSet):
        self.gamma = gamma
        self.presentation = presentation_of(gamma)
        self.types = compute_types(gamma)
        self.cyclic = cyclic_types(gamma)
        self.sizes: dict[int, int] = {}

    def is_cyclic(self, t: Term) -> bool:
        return any(
            self.types.index_of_key(self.presentation.class_key(sub)) in self.cyclic
            for sub in t.subterms()
        )

    def leaves_product(self, tree: ReducedTree) -> int:
        return math.prod(self.type_size(index) for _, index in tree.typed_leaves())

    def type_size(self, index: int) -> int:
        size = self.sizes.get(index)
        if size is not None:
            return size

        key = self.types.keys[index - 1]
        closure = self.presentation.closure
        trees = {
            reduce_term(self.presentation, self.types, node.subterm)
            for node_index, node in enumerate(self.presentation.graph.nodes)
            if closure.class_map[node_index] == key
        }
        size = sum(self.leaves_product(tree) for tree in trees)
        self.sizes[index] = size
        return size


def class_size(gamma: EquationSet, t: Term) -> int | float:
    """Size of the ∼_Γ class of t.

    Returns:
        INFINITE when a subterm of t has a cyclic type; otherwise the size of the type's class
        for typed t, or the product of the class sizes at the typed leaves of r(t)
    """
    counter = _ClassCounter(gamma)
    if counter.is_cyclic(t):
        return INFINITE

    index = counter.types.index_of_key(counter.presentation.class_key(t))
    if index is not None:
        return counter.type_size(index)
    return counter.leaves_product(reduce_term(counter.presentation, counter.types, t))


def intrinsic_infinite(gamma: EquationSet) -> bool:
    """True when every constant of Σ has a cyclic type, so that every class is infinite."""
    cyclic = cyclic_types(gamma)
    types = compute_types(gamma)
    presentation = presentation_of(gamma)
    return all(
        types.index_of_key(presentation.class_key(Term(name))) in cyclic
        for name in gamma.signature.constants
    )


def subterm_closure(gamma: EquationSet) -> SubtermAlgebra:
    """ST(Γ) with an empty operation table."""
    return SubtermAlgebra(gamma.subterms())


def is_finite(gamma: EquationSet, progress: bool = False) -> bool:
    """Decide whether F_Γ is finite.

    F_Γ is finite exactly when every constant is equal to a member of ST(Γ) and ST(Γ) is closed
    under every function symbol up to ∼_Γ. A signature without function symbols is always finite.

    Args:
        gamma: The presentation
        progress: Show a progress bar over the closure checks
    """
    sig = gamma.signature
    if not sig.functions:
        return True

    presentation = presentation_of(gamma)
    members: dict[int, Term] = {}
    for sub in gamma.subterms():
        members.setdefault(presentation.class_key(sub), sub)

    for name in sig.constants:
        if presentation.class_key(Term(name)) not in members:
            logger.info(f"Constant {name} is not equal to any subterm of Γ")
            return False

    keys = list(members)
    total = sum(len(keys) ** arity for arity in sig.functions.values())
    checks = (
        (symbol, args)
        for symbol, arity in sig.functions.items()
        for args in itertools.product(keys, repeat=arity)
    )
    for symbol, args in tqdm(checks, total=total, desc="Closure checks", disable=not progress):
        if presentation.apply_key(symbol, args) not in members:
            witness = Term(symbol, [members[key] for key in args])
            logger.info(f"{witness} is not equal to any subterm of Γ")
            return False
    return True


def induced_partial_algebra(gamma: EquationSet, terms: tuple[Term, ...]) -> SubtermAlgebra:
    """The partial algebra induced by Γ on the classes of the given terms.

    The carrier holds one canonical representative per class; an operation is defined exactly
    when its result lies in the carrier.
    """
    presentation = presentation_of(gamma)

    carrier: dict[int, Term] = {}
    for t in terms:
        key = presentation.class_key(t)
        if key not in carrier:
            carrier[key] = canonical_rep(gamma, t)

    table: dict[tuple[str, tuple[Term, ...]], Term] = {}
    for symbol, arity in gamma.signature.functions.items():
        for args in itertools.product(carrier, repeat=arity):
            result = presentation.apply_key(symbol, args)
            if result in carrier:
                table[(symbol, tuple(carrier[key] for key in args))] = carrier[result]

    members = tuple(sorted(carrier.values(), key=term_order_key))
    return SubtermAlgebra(members, table)


def enumerate_if_finite(gamma: EquationSet, progress: bool = False) -> SubtermAlgebra:
    """List the elements of a finite F_Γ, one canonical representative per class.

    Raises:
        NotFiniteError: If F_Γ is infinite
    """
    if not is_finite(gamma, progress=progress):
        raise NotFiniteError("The almost free algebra of this presentation is infinite")

    constants = tuple(Term(name) for name in gamma.signature.constants)
    algebra = induced_partial_algebra(gamma, constants + gamma.subterms())
    logger.info(f"F_Γ has {len(algebra)} element(s)")
    return algebra


def are_isomorphic(sig: Signature, first: EquationSet, second: EquationSet) -> bool:
    """Decide F_Γ1 ≅ F_Γ2 by comparing both congruences on C ∪ ST(Γ1 ∪ Γ2).

    Raises:
        SignatureMismatchError: If either presentation is not over sig
    """
    if first.signature != sig or second.signature != sig:
        raise SignatureMismatchError("Both presentations must be over the given signature")

    constants = tuple(Term(name) for name in sig.constants)
    terms = tuple(dict.fromkeys(constants + first.union(second).subterms()))
    left = presentation_of(first)
    right = presentation_of(second)

    for index, u in enumerate(terms):
        for t in terms[index + 1 :]:
            if left.equal(u, t) != right.equal(u, t):
                logger.info(f"{u} and {t} separate the two presentations")
                return False
    return True
