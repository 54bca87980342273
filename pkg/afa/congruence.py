"""Congruence closure deciding F_Γ ⊨ s = t.

R_Γ is the disjoint union of the trees of the distinct sides of Γ. Closing it adds undirected
edges between nodes whose rooted subterms are syntactically equal or form an equation of Γ,
then closes the edge relation under transitivity and the child-wise congruence rule. The
closure is kept as a union-find over the nodes with a signature table and per-class use lists.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache

from loguru import logger

from .terms import EquationSet, Position, Signature, Term, check_term, term_order_key


@dataclass(frozen=True)
class Node:
    """A node of R_Γ: index of its tree, origin term, symbol and position in the origin."""

    origin: int
    term: Term
    symbol: str
    position: Position
    subterm: Term = field(compare=False, repr=False)


class CongruenceGraph:
    """The mixed graph R_Γ: a forest of term trees plus the equations seeding its closure.

    Directed edges are the parent to child edges of the trees (see `children`). Undirected
    edges are produced by `close`.

    Args:
        signature: Signature of every tree
        equations: Equations whose sides are joined before the closure starts
    """

    def __init__(self, signature: Signature, equations: Iterable[tuple[Term, Term]] = ()):
        self.signature = signature
        self.equations: tuple[tuple[Term, Term], ...] = tuple(equations)
        self.origins: list[Term] = []
        self.roots: list[int] = []
        self.nodes: list[Node] = []
        self.children: list[tuple[int, ...]] = []

    def __len__(self) -> int:
        return len(self.nodes)

    def add_tree(self, t: Term) -> int:
        """Adjoin the tree of t and return the index of its root node."""
        origin = len(self.origins)
        self.origins.append(t)

        index_of: dict[Position, int] = {}
        entries = list(t.positions())
        for position, sub in entries:
            index_of[position] = len(self.nodes)
            self.nodes.append(Node(origin, t, sub.symbol, position, sub))
            self.children.append(())
        for position, sub in entries:
            self.children[index_of[position]] = tuple(
                index_of[position + (index,)] for index in range(len(sub.args))
            )

        root = index_of[()]
        self.roots.append(root)
        return root

    def copy(self) -> "CongruenceGraph":
        graph = CongruenceGraph(self.signature, self.equations)
        graph.origins = list(self.origins)
        graph.roots = list(self.roots)
        graph.nodes = list(self.nodes)
        graph.children = list(self.children)
        return graph

    def directed_edges(self) -> Iterator[tuple[int, int]]:
        for parent, kids in enumerate(self.children):
            for kid in kids:
                yield parent, kid


@dataclass(frozen=True)
class ClosureResult:
    """R_Γ after the closure reached its fixpoint.

    `class_map[i]` is the class id of node i: the smallest node index of its class.
    """

    graph: CongruenceGraph
    class_map: tuple[int, ...]

    def same_class(self, u: int, v: int) -> bool:
        return self.class_map[u] == self.class_map[v]

    def classes(self) -> list[list[int]]:
        """Node classes ordered by class id."""
        grouped: dict[int, list[int]] = {}
        for node, class_id in enumerate(self.class_map):
            grouped.setdefault(class_id, []).append(node)
        return [grouped[class_id] for class_id in sorted(grouped)]

    def edges(self) -> frozenset[tuple[int, int]]:
        """The closed undirected edge set, as pairs (u, v) with u < v."""
        return frozenset(
            (u, v) for members in self.classes() for u in members for v in members if u < v
        )


class UnionFind:
    """Disjoint sets over 0..size-1 with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def attach(self, child_root: int, root: int) -> None:
        self.parent[child_root] = root


def build_r_gamma(gamma: EquationSet) -> CongruenceGraph:
    """Build R_Γ: one tree per distinct side of Γ, in order of first occurrence."""
    graph = CongruenceGraph(gamma.signature, gamma.equations)
    for side in gamma.sides():
        graph.add_tree(side)
    return graph


def extend_with_terms(graph: CongruenceGraph, s: Term, t: Term) -> CongruenceGraph:
    """Return R_Γ(s,t): a copy of graph with the trees of s and t adjoined.

    Raises:
        SignatureMismatchError: If s or t is not over the graph's signature
    """
    check_term(s, graph.signature)
    check_term(t, graph.signature)
    extended = graph.copy()
    extended.add_tree(s)
    extended.add_tree(t)
    return extended


def close(graph: CongruenceGraph) -> ClosureResult:
    """Close the undirected edges of graph under equality and congruence.

    Seeding joins nodes with syntactically equal rooted subterms (found by hashing) and the
    roots of the two sides of every equation; the worklist then merges classes and re-keys the
    parents of the absorbed class in the signature table until no new edge appears.
    """
    size = len(graph)
    nodes = graph.nodes
    children = graph.children
    union_find = UnionFind(size)
    pending: list[tuple[int, int]] = []

    # Seed: syntactically equal subterms
    first_with: dict[Term, int] = {}
    for index, node in enumerate(nodes):
        first = first_with.setdefault(node.subterm, index)
        if first != index:
            pending.append((first, index))

    # Seed: the equations themselves
    for left, right in graph.equations:
        if left in first_with and right in first_with:
            pending.append((first_with[left], first_with[right]))

    uses: list[list[int]] = [[] for _ in range(size)]
    for parent, kids in enumerate(children):
        for kid in set(kids):
            uses[kid].append(parent)

    def signature(node: int) -> tuple[str, tuple[int, ...]]:
        return (nodes[node].symbol, tuple(union_find.find(kid) for kid in children[node]))

    table: dict[tuple[str, tuple[int, ...]], int] = {}
    for index in range(size):
        if children[index]:
            other = table.setdefault(signature(index), index)
            if other != index:
                pending.append((other, index))

    merges = 0
    while pending:
        left_root, right_root = (union_find.find(node) for node in pending.pop())
        if left_root == right_root:
            continue
        if len(uses[left_root]) < len(uses[right_root]):
            left_root, right_root = right_root, left_root
        union_find.attach(right_root, left_root)
        merges += 1

        moved, uses[right_root] = uses[right_root], []
        for parent in moved:
            other = table.setdefault(signature(parent), parent)
            if other != parent and union_find.find(other) != union_find.find(parent):
                pending.append((other, parent))
        uses[left_root].extend(moved)

    smallest: dict[int, int] = {}
    for index in range(size):
        smallest.setdefault(union_find.find(index), index)
    class_map = tuple(smallest[union_find.find(index)] for index in range(size))

    logger.debug(f"Closed graph with {size} nodes: {merges} merges, {len(smallest)} classes")
    return ClosureResult(graph, class_map)


def decide_equal(gamma: EquationSet, s: Term, t: Term) -> bool:
    """Decide F_Γ ⊨ s = t by closing R_Γ(s,t) and comparing the roots of s and t.

    Raises:
        SignatureMismatchError: If s or t is not over Γ's signature
    """
    graph = extend_with_terms(build_r_gamma(gamma), s, t)
    result = close(graph)
    return result.same_class(graph.roots[-2], graph.roots[-1])


class Presentation:
    """The closure of R_Γ, answering class queries for arbitrary terms.

    A term equal to some node of R_Γ gets the class id of that node. Any other term gets a
    fresh negative key determined by its root symbol and the keys of its children, so two
    terms are ∼_Γ-equal exactly when their keys coincide. Fresh keys and the keys of queried
    terms are kept for the life of the presentation.

    Args:
        equations: The presentation Γ
    """

    def __init__(self, equations: EquationSet):
        self.equations = equations
        self.signature = equations.signature
        self.graph = build_r_gamma(equations)
        self.closure = close(self.graph)

        class_map = self.closure.class_map
        self._table: dict[tuple[str, tuple[int, ...]], int] = {}
        self._witness: dict[int, Term] = {}
        for index, node in enumerate(self.graph.nodes):
            key = class_map[index]
            kids = tuple(class_map[kid] for kid in self.graph.children[index])
            self._table.setdefault((node.symbol, kids), key)
            current = self._witness.get(key)
            if current is None or term_order_key(node.subterm) < term_order_key(current):
                self._witness[key] = node.subterm

        self._fresh: dict[tuple[str, tuple[int, ...]], int] = {}
        self._term_keys: dict[Term, int] = {}

    def apply_key(self, symbol: str, child_keys: Iterable[int]) -> int:
        """Key of the class of symbol applied to members of the given classes."""
        signature = (symbol, tuple(child_keys))
        key = self._table.get(signature)
        if key is not None:
            return key
        key = self._fresh.get(signature)
        if key is None:
            key = -1 - len(self._fresh)
            self._fresh[signature] = key
            self._witness[key] = Term(symbol, [self._witness[child] for child in signature[1]])
        return key

    def class_key(self, t: Term) -> int:
        key = self._term_keys.get(t)
        if key is None:
            key = self.apply_key(t.symbol, [self.class_key(arg) for arg in t.args])
            self._term_keys[t] = key
        return key

    def equal(self, s: Term, t: Term) -> bool:
        return self.class_key(s) == self.class_key(t)

    def witness(self, key: int) -> Term:
        """A member of the class: the smallest node term, or the term the key was built from."""
        return self._witness[key]


@lru_cache(maxsize=128)
def presentation_of(gamma: EquationSet) -> Presentation:
    """Shared, cached closure of Γ."""
    presentation = Presentation(gamma)
    logger.debug(f"Built presentation for {len(gamma)} equation(s)")
    return presentation
