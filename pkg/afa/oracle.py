"""Brute-force semi-decision of ∼_Γ by breadth-first rewriting.

Independent of the congruence closure; used as ground truth in tests and by `afa oracle`.
"""

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

from loguru import logger

from .terms import EquationSet, Term, replace_at


class Verdict(Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not-equal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RewriteBudget:
    """Limits of a rewriting search.

    Args:
        max_steps: Maximum number of terms expanded
        max_height: Terms taller than this are pruned

    Raises:
        ValueError: If either limit is not positive
    """

    max_steps: int = 10_000
    max_height: int = 8

    def __post_init__(self) -> None:
        if self.max_steps < 1 or self.max_height < 1:
            raise ValueError(
                f"Rewrite budget limits must be positive, got steps={self.max_steps}, "
                f"height={self.max_height}"
            )


@dataclass(frozen=True)
class ClassClosure:
    """Terms reachable from a start term; saturated when the whole class was enumerated."""

    members: frozenset[Term]
    saturated: bool


def rewrite_rules(gamma: EquationSet) -> dict[Term, list[Term]]:
    """Each side of Γ mapped to the sides it may be replaced by, in both directions."""
    rules: dict[Term, list[Term]] = {}
    for left, right in gamma:
        if left == right:
            continue
        for source, target in ((left, right), (right, left)):
            targets = rules.setdefault(source, [])
            if target not in targets:
                targets.append(target)
    return rules


def one_step_rewrites(t: Term, rules: dict[Term, list[Term]]) -> Iterator[Term]:
    """Yield every term obtained by replacing one occurrence of a rule side."""
    for position, sub in t.positions():
        for replacement in rules.get(sub, ()):
            yield replace_at(t, position, replacement)


def _explore(
    gamma: EquationSet, start: Term, budget: RewriteBudget, target: Term | None = None
) -> tuple[set[Term], bool, bool]:
    """Breadth-first search from start.

    Returns:
        (reached terms, whether target was reached, whether the search saturated)
    """
    rules = rewrite_rules(gamma)
    seen = {start}
    if start == target:
        return seen, True, False

    queue = deque([start])
    pruned = False
    steps = 0
    while queue:
        if steps >= budget.max_steps:
            logger.debug(f"Rewrite search from {start} stopped after {steps} steps")
            return seen, False, False
        term = queue.popleft()
        steps += 1
        for successor in one_step_rewrites(term, rules):
            if successor in seen:
                continue
            if successor.height > budget.max_height:
                pruned = True
                continue
            seen.add(successor)
            if successor == target:
                return seen, True, False
            queue.append(successor)

    return seen, False, not pruned


def rewrite_oracle(
    gamma: EquationSet, s: Term, t: Term, budget: RewriteBudget | None = None
) -> Verdict:
    """Search for a rewrite chain from s to t.

    Returns:
        EQUAL if t is reached; NOT_EQUAL if the search saturates without reaching t and without
        pruning a term; UNKNOWN otherwise
    """
    budget = budget or RewriteBudget()
    _, found, saturated = _explore(gamma, s, budget, target=t)
    if found:
        return Verdict.EQUAL
    if saturated:
        return Verdict.NOT_EQUAL
    return Verdict.UNKNOWN


def class_closure(gamma: EquationSet, t: Term, budget: RewriteBudget | None = None) -> ClassClosure:
    """Enumerate the ∼_Γ class of t as far as the budget allows."""
    budget = budget or RewriteBudget()
    members, _, saturated = _explore(gamma, t, budget)
    return ClassClosure(frozenset(members), saturated)
