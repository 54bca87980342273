"""The finite partial algebra B induced by Γ and its free extension F(B).

B consists of the ∼_Γ classes that contain a term of height at most N, the largest height of
a side of Γ. F(B)-terms are elements of B or stuck applications f(t1,...,tk) whose value in B
is undefined; F(B) is isomorphic to F_Γ, so two ground terms are ∼_Γ-equal exactly when they
normalize to the same F(B)-term.
"""

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache

from loguru import logger
from tqdm import tqdm

from .canonical import canonical_rep
from .congruence import Presentation, presentation_of
from .errors import ArityError
from .terms import EquationSet, Signature, Term, term_order_key


@dataclass(frozen=True)
class BElement:
    """An element of B: a ∼_Γ class, named by its canonical representative."""

    key: int
    rep: Term = field(compare=False)

    def __str__(self) -> str:
        return f"[{self.rep}]"

    @property
    def height(self) -> int:
        return 0


@dataclass(frozen=True)
class Stuck:
    """An application whose value in B is undefined."""

    symbol: str
    args: tuple["FBTerm", ...]

    def __str__(self) -> str:
        return f"{self.symbol}({','.join(str(arg) for arg in self.args)})"

    @property
    def height(self) -> int:
        return 1 + max(arg.height for arg in self.args)


FBTerm = BElement | Stuck


@dataclass(frozen=True)
class PartialAlgebra:
    """The partial algebra B built from Γ.

    Args:
        equations: The presentation Γ
        height_bound: N, the height bound used for the carrier
        elements: The carrier in term order of the representatives
        constants: Σ-constant name to its element
        table: (f, argument keys) to the result key, for defined applications only
    """

    equations: EquationSet
    height_bound: int
    elements: tuple[BElement, ...]
    constants: dict[str, BElement] = field(compare=False)
    table: dict[tuple[str, tuple[int, ...]], int] = field(compare=False)
    _by_key: dict[int, BElement] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._by_key.update({element.key: element for element in self.elements})

    @property
    def signature(self) -> Signature:
        return self.equations.signature

    def __len__(self) -> int:
        return len(self.elements)

    def element(self, key: int) -> BElement:
        return self._by_key[key]

    def lookup(self, symbol: str, args: Iterable[BElement]) -> BElement | None:
        """Value of symbol on B elements, or None where the operation is undefined."""
        key = self.table.get((symbol, tuple(arg.key for arg in args)))
        return None if key is None else self._by_key[key]

    @property
    def is_closed(self) -> bool:
        """True when every operation is total, that is F(B) = B."""
        size = len(self.elements)
        return len(self.table) == sum(size**arity for arity in self.signature.functions.values())

    def __iter__(self) -> Iterator[BElement]:
        return iter(self.elements)

    def describe(self) -> list[str]:
        """Printable lines: the height bound, the carrier, then the defined operations."""
        lines = [f"N = {self.height_bound}", f"carrier ({len(self)}): " + " ".join(map(str, self))]
        order = {element.key: index for index, element in enumerate(self.elements)}
        for (symbol, keys), result in sorted(
            self.table.items(), key=lambda item: (item[0][0], [order[key] for key in item[0][1]])
        ):
            args = ",".join(str(self._by_key[key]) for key in keys)
            lines.append(f"{symbol}({args}) = {self._by_key[result]}")
        return lines


def class_levels(presentation: Presentation, sig: Signature, max_height: int) -> list[set[int]]:
    """Class keys of all terms of height at most h, for h = 0..max_height."""
    constants = {presentation.class_key(Term(name)) for name in sig.constants}
    levels = [set(constants)]
    for _ in range(max_height):
        previous = sorted(levels[-1])
        level = set(constants)
        for symbol, arity in sig.functions.items():
            for args in itertools.product(previous, repeat=arity):
                level.add(presentation.apply_key(symbol, args))
        levels.append(level)
    return levels


def classes_up_to_height(gamma: EquationSet, max_height: int) -> list[int]:
    """Number of ∼_Γ classes among all terms of height at most h, for h = 0..max_height.

    F_Γ is finite exactly when these counts become constant.
    """
    levels = class_levels(presentation_of(gamma), gamma.signature, max_height)
    return [len(level) for level in levels]


@lru_cache(maxsize=64)
def build_partial_algebra(gamma: EquationSet, progress: bool = False) -> PartialAlgebra:
    """Build B: the classes of terms of height at most N, with the operations that stay in B.

    Args:
        gamma: The presentation; N is 0 when it is empty
        progress: Show a progress bar while filling the operation table
    """
    sig = gamma.signature
    presentation = presentation_of(gamma)
    bound = gamma.height_bound()
    carrier = class_levels(presentation, sig, bound)[-1]

    elements = sorted(
        (BElement(key, canonical_rep(gamma, presentation.witness(key))) for key in carrier),
        key=lambda element: term_order_key(element.rep),
    )

    table: dict[tuple[str, tuple[int, ...]], int] = {}
    keys = [element.key for element in elements]
    total = sum(len(keys) ** arity for arity in sig.functions.values())
    applications = (
        (symbol, args)
        for symbol, arity in sig.functions.items()
        for args in itertools.product(keys, repeat=arity)
    )
    for symbol, args in tqdm(
        applications, total=total, desc="Operation table", disable=not progress
    ):
        result = presentation.apply_key(symbol, args)
        if result in carrier:
            table[(symbol, args)] = result

    by_key = {element.key: element for element in elements}
    algebra = PartialAlgebra(
        equations=gamma,
        height_bound=bound,
        elements=tuple(elements),
        constants={name: by_key[presentation.class_key(Term(name))] for name in sig.constants},
        table=table,
    )

    logger.info(
        f"Built B with {len(elements)} element(s) and {len(table)}/{total} defined operation(s)"
    )
    return algebra


def apply(algebra: PartialAlgebra, symbol: str, args: Iterable[FBTerm]) -> FBTerm:
    """Apply a function symbol in F(B).

    Returns:
        The table value when every argument is a B element and the operation is defined,
        otherwise the stuck application

    Raises:
        ArityError: If the number of arguments does not match the arity of symbol
    """
    args = tuple(args)
    arity = algebra.signature.arity(symbol)
    if arity != len(args) or arity == 0:
        raise ArityError(f"Symbol '{symbol}' expects {arity} argument(s), got {len(args)}")
    if all(isinstance(arg, BElement) for arg in args):
        value = algebra.lookup(symbol, args)  # type: ignore[arg-type]
        if value is not None:
            return value
    return Stuck(symbol, args)


def normalize(algebra: PartialAlgebra, t: Term) -> FBTerm:
    """Evaluate a ground term in F(B), collapsing every subterm that has a value in B."""
    if t.is_constant:
        return algebra.constants[t.symbol]
    return apply(algebra, t.symbol, [normalize(algebra, arg) for arg in t.args])


def is_f(x: FBTerm, symbol: str) -> bool:
    """Tester predicate Is_f: false on B, true on stuck terms rooted at symbol.

    The answer depends on x alone, so no algebra is taken.
    """
    return isinstance(x, Stuck) and x.symbol == symbol


def to_ground(x: FBTerm) -> Term:
    """A ground term denoting x: B elements are replaced by their representatives."""
    if isinstance(x, BElement):
        return x.rep
    return Term(x.symbol, [to_ground(arg) for arg in x.args])


def enumerate_fb_terms(algebra: PartialAlgebra, max_height: int) -> list[FBTerm]:
    """Every F(B)-term of height at most max_height, B elements first, then by height."""
    found: set[FBTerm] = set(algebra.elements)
    for _ in range(max_height):
        found |= {
            apply(algebra, symbol, args)
            for symbol, arity in algebra.signature.functions.items()
            for args in itertools.product(sorted(found, key=str), repeat=arity)
        }
    return sorted(found, key=lambda value: (value.height, str(value)))
