"""Command-line interface for the almost free algebra toolkit."""

import json
import sys
from collections.abc import Callable, Iterator, Sequence
from contextlib import contextmanager
from typing import Any

import click
from dotenv import load_dotenv
from loguru import logger
from tqdm import tqdm

from .canonical import canonical_rep, compute_types, reduced_rep, type_of
from .congruence import decide_equal
from .counting import (
    INFINITE,
    are_isomorphic,
    class_size,
    cyclic_types,
    enumerate_if_finite,
    intrinsic_infinite,
    is_finite,
)
from .errors import AfaError, BudgetExhaustedError
from .formula import is_quantifier_free, model_check, parse_formula
from .free_extension import build_partial_algebra, classes_up_to_height
from .oracle import RewriteBudget, Verdict, rewrite_oracle
from .problem import Problem, load_problem
from .qe import DEFAULT_BUDGET, decide_sentence, eliminate, special_violations, to_standard
from .terms import parse_term

# Load environment variables from .env file
load_dotenv()


def configure_logging(verbosity: int, quiet: bool) -> None:
    """Configure loguru logging based on verbosity level.

    Args:
        verbosity: Verbosity level (0=WARNING, 1=INFO, 2+=DEBUG)
        quiet: If True, suppress all logging output
    """
    logger.remove()

    if quiet:
        return

    if verbosity == 0:
        level = "WARNING"
    elif verbosity == 1:
        level = "INFO"
    else:
        level = "DEBUG"

    # Route through tqdm.write so log lines do not break progress bars
    logger.add(
        lambda msg: tqdm.write(msg, end="", file=sys.stderr),
        level=level,
        format=(
            "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
            "<level>{level: <8}</level> | <level>{message}</level>"
        ),
        colorize=True,
    )


class CommandError(click.ClickException):
    """A toolkit error reported on the terminal, with the exit code of its kind."""

    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


class AfaGroup(click.Group):
    """Command group whose usage errors exit with status 1, leaving 2 to budget exhaustion."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


def _render(value: Any) -> str:
    if isinstance(value, list):
        return " ".join(_render(item) for item in value) or "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value == INFINITE:
        return "inf"
    return str(value)


def _emit(
    command: str, as_json: bool, answer: Any, detail: Any = None, lines: Sequence[str] = ()
) -> None:
    """Print an answer: one JSON object, or the answer followed by detail lines."""
    if as_json:
        if answer == INFINITE and not isinstance(answer, bool):
            answer = "inf"
        payload = {"command": command, "answer": answer, "detail": detail}
        click.echo(json.dumps(payload, ensure_ascii=False))
        return
    click.echo(_render(answer))
    for line in lines:
        click.echo(line)


def _emit_error(command: str, kind: str, message: str) -> None:
    error = {"type": kind, "message": message}
    click.echo(json.dumps({"command": command, "error": error}, ensure_ascii=False))


@contextmanager
def _session(
    command: str, problem: str, as_json: bool, verbose: int, quiet: bool
) -> Iterator[Problem]:
    """Load the problem file and turn toolkit errors into exit codes.

    Raises:
        CommandError: For any toolkit error in text mode
        click.exceptions.Exit: After printing the error object in JSON mode
    """
    configure_logging(verbose, quiet)
    try:
        yield load_problem(problem)
    except AfaError as e:
        exit_code = 2 if isinstance(e, BudgetExhaustedError) else 1
        logger.debug(f"{command} failed with {type(e).__name__}")
        if as_json:
            _emit_error(command, type(e).__name__, str(e))
            raise click.exceptions.Exit(exit_code) from e
        raise CommandError(str(e), exit_code) from e
    except click.UsageError as e:
        if as_json:
            _emit_error(command, "UsageError", e.format_message())
            raise click.exceptions.Exit(1) from e
        raise


def _show_progress(verbose: int, quiet: bool) -> bool:
    return verbose > 0 and not quiet and sys.stdout.isatty()


def common_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Decorator to add the options shared by every subcommand.

    Args:
        f: Function to decorate

    Returns:
        Decorated function with common options
    """
    decorators = [
        click.option(
            "--problem",
            "-p",
            required=True,
            envvar="AFA_PROBLEM",
            help="Path to the problem file (or set AFA_PROBLEM env var)",
        ),
        click.option(
            "--json",
            "as_json",
            is_flag=True,
            help="Print one JSON object with the fields command, answer and detail",
        ),
        click.option(
            "--verbose",
            "-v",
            count=True,
            help="Increase verbosity (use -v for info, -vv for debug). "
            "Default shows warnings and errors.",
        ),
        click.option(
            "--quiet",
            "-q",
            is_flag=True,
            help="Suppress all log output.",
        ),
    ]
    for decorator in reversed(decorators):
        f = decorator(f)
    return f


def budget_option(f: Callable[..., Any]) -> Callable[..., Any]:
    """Decorator to add the quantifier elimination budget option."""
    return click.option(
        "--budget",
        "-b",
        default=DEFAULT_BUDGET,
        envvar="AFA_BUDGET",
        type=click.IntRange(min=1),
        show_default=True,
        help="Node budget for quantifier elimination (or set AFA_BUDGET env var)",
    )(f)


@click.group(cls=AfaGroup)
def cli() -> None:
    """Decision procedures for almost free algebras."""
    pass


@cli.command()
@click.argument("s", required=False)
@click.argument("t", required=False)
@common_options
def eq(
    s: str | None, t: str | None, problem: str, as_json: bool, verbose: int, quiet: bool
) -> None:
    """Decide whether S and T are equal in F_Γ.

    Without terms, answers every query statement of the problem file.

    Examples:
        afa eq --problem gex.afa "a" "f(b,f(a,b))"
    """
    with _session("eq", problem, as_json, verbose, quiet) as loaded:
        if s is not None and t is not None:
            left = parse_term(s, loaded.signature)
            right = parse_term(t, loaded.signature)
            _emit("eq", as_json, decide_equal(loaded.equations, left, right))
            return
        if s is not None:
            raise click.UsageError("Give two terms, or none to answer the queries of the file")
        if not loaded.queries:
            raise click.UsageError("No terms given and the problem file has no queries")

        answers = [
            (left, right, decide_equal(loaded.equations, left, right))
            for left, right in loaded.queries
        ]
        _emit(
            "eq",
            as_json,
            all(answer for _, _, answer in answers),
            [{"left": str(left), "right": str(right), "answer": a} for left, right, a in answers],
            [f"{left} = {right}: {_render(a)}" for left, right, a in answers],
        )


@cli.command()
@click.argument("t")
@common_options
def rep(t: str, problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """Print the canonical representative of the class of T."""
    with _session("rep", problem, as_json, verbose, quiet) as loaded:
        term = parse_term(t, loaded.signature)
        _emit("rep", as_json, str(canonical_rep(loaded.equations, term)), {"term": str(term)})


@cli.command()
@click.argument("t")
@common_options
def card(t: str, problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """Print the size of the class of T, or "inf"."""
    with _session("card", problem, as_json, verbose, quiet) as loaded:
        term = parse_term(t, loaded.signature)
        _emit("card", as_json, class_size(loaded.equations, term), {"term": str(term)})


@cli.command()
@common_options
def infinite(problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """Decide whether every class of F_Γ is infinite."""
    with _session("infinite", problem, as_json, verbose, quiet) as loaded:
        _emit("infinite", as_json, intrinsic_infinite(loaded.equations))


@cli.command()
@click.option("--enumerate", "list_carrier", is_flag=True, help="List the elements when finite")
@common_options
def finite(
    list_carrier: bool, problem: str, as_json: bool, verbose: int, quiet: bool
) -> None:
    """Decide whether F_Γ is finite."""
    with _session("finite", problem, as_json, verbose, quiet) as loaded:
        progress = _show_progress(verbose, quiet)
        answer = is_finite(loaded.equations, progress=progress)
        if not (answer and list_carrier):
            _emit("finite", as_json, answer)
            return

        members = [str(member) for member in enumerate_if_finite(loaded.equations).members]
        _emit("finite", as_json, answer, {"elements": members}, members)


@cli.command()
@click.argument("other")
@common_options
def iso(other: str, problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """Decide whether the problem's algebra is isomorphic to the one of problem file OTHER."""
    with _session("iso", problem, as_json, verbose, quiet) as loaded:
        second = load_problem(other)
        answer = are_isomorphic(loaded.signature, loaded.equations, second.equations)
        _emit("iso", as_json, answer, {"other": other})


@cli.command("build-b")
@common_options
def build_b(problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """Print the partial algebra B: carrier and defined operations."""
    with _session("build-b", problem, as_json, verbose, quiet) as loaded:
        algebra = build_partial_algebra(loaded.equations, progress=_show_progress(verbose, quiet))
        lines = algebra.describe()
        detail = {
            "height_bound": algebra.height_bound,
            "carrier": [str(element) for element in algebra],
            "operations": lines[2:],
            "closed": algebra.is_closed,
        }
        _emit("build-b", as_json, len(algebra), detail, lines)


@cli.command()
@click.argument("formula")
@click.option(
    "--standard", is_flag=True, help="Only rewrite into standard form, keeping special formulas"
)
@budget_option
@common_options
def qe(
    formula: str,
    standard: bool,
    budget: int,
    problem: str,
    as_json: bool,
    verbose: int,
    quiet: bool,
) -> None:
    """Eliminate the quantifiers of FORMULA.

    Examples:
        afa qe --problem gex.afa "exists y. x = f(y, b)"
    """
    with _session("qe", problem, as_json, verbose, quiet) as loaded:
        algebra = build_partial_algebra(loaded.equations)
        parsed = parse_formula(formula, algebra)
        rewrite = to_standard if standard else eliminate
        result = rewrite(algebra, parsed, budget)
        detail = {
            "input": str(parsed),
            "quantifier_free": is_quantifier_free(result),
            "standard": not special_violations(result),
        }
        _emit("qe", as_json, str(result), detail)


@cli.command()
@click.argument("sentence")
@click.option(
    "--model-check",
    "exhaustive",
    is_flag=True,
    help="Evaluate exhaustively over the carrier instead (finite algebras only)",
)
@budget_option
@common_options
def decide(
    sentence: str,
    exhaustive: bool,
    budget: int,
    problem: str,
    as_json: bool,
    verbose: int,
    quiet: bool,
) -> None:
    """Decide whether F_Γ satisfies SENTENCE.

    Examples:
        afa decide --problem empty.afa "exists y. f(y) = a"
    """
    with _session("decide", problem, as_json, verbose, quiet) as loaded:
        algebra = build_partial_algebra(loaded.equations)
        parsed = parse_formula(sentence, algebra, sentence=True)
        if exhaustive:
            answer = model_check(algebra, parsed)
        else:
            answer = decide_sentence(loaded.equations, parsed, budget)
        method = "model-check" if exhaustive else "qe"
        _emit("decide", as_json, answer, {"sentence": str(parsed), "method": method})


@cli.group()
def oracle() -> None:
    """Brute-force rewriting checks, independent of the congruence closure."""
    pass


@oracle.command("eq")
@click.argument("s")
@click.argument("t")
@click.option(
    "--max-steps",
    default=10_000,
    type=click.IntRange(min=1),
    help="Terms to expand (default 10000)",
)
@click.option(
    "--max-height", default=8, type=click.IntRange(min=1), help="Height cap (default 8)"
)
@common_options
def oracle_eq(
    s: str,
    t: str,
    max_steps: int,
    max_height: int,
    problem: str,
    as_json: bool,
    verbose: int,
    quiet: bool,
) -> None:
    """Search for a rewrite chain from S to T: "equal", "not-equal" or "unknown"."""
    with _session("oracle eq", problem, as_json, verbose, quiet) as loaded:
        left = parse_term(s, loaded.signature)
        right = parse_term(t, loaded.signature)
        verdict = rewrite_oracle(
            loaded.equations, left, right, RewriteBudget(max_steps, max_height)
        )
        if verdict is Verdict.UNKNOWN:
            logger.warning(f"Rewriting budget exhausted before deciding {left} = {right}")
        detail = {"max_steps": max_steps, "max_height": max_height}
        _emit("oracle eq", as_json, verdict.value, detail)


@cli.command()
@click.argument("terms", nargs=-1)
@common_options
def types(
    terms: tuple[str, ...], problem: str, as_json: bool, verbose: int, quiet: bool
) -> None:
    """Print the types of Γ and, for each of TERMS, its type and reduced representation."""
    with _session("types", problem, as_json, verbose, quiet) as loaded:
        gamma = loaded.equations
        assignment = compute_types(gamma)
        max_arity = loaded.signature.max_arity

        lines = []
        detail: dict[str, Any] = {"types": [], "terms": []}
        for index in range(1, assignment.count + 1):
            members = [str(member) for member in assignment.members(index)]
            representative = str(assignment.representative(index))
            lines.append(f"type {index}: {' '.join(members)} (rep {representative})")
            detail["types"].append(
                {"index": index, "members": members, "representative": representative}
            )

        for text in terms:
            term = parse_term(text, loaded.signature)
            index = type_of(gamma, term)
            reduced = reduced_rep(gamma, term).describe(max_arity)
            label = "untyped" if index is None else f"type {index}"
            lines.append(f"{term}: {label}, r = {reduced}")
            detail["terms"].append({"term": str(term), "type": index, "reduced": reduced})

        _emit("types", as_json, assignment.count, detail, lines)


@cli.command()
@click.option("--height", "-h", "max_height", default=4, type=click.IntRange(min=0))
@common_options
def classes(max_height: int, problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """Count the classes of all terms of height at most 0, 1, ..., HEIGHT."""
    with _session("classes", problem, as_json, verbose, quiet) as loaded:
        counts = classes_up_to_height(loaded.equations, max_height)
        lines = [f"height {height}: {count}" for height, count in enumerate(counts)]
        _emit("classes", as_json, counts, None, lines)


@cli.command()
@common_options
def cyclic(problem: str, as_json: bool, verbose: int, quiet: bool) -> None:
    """List the cyclic types and whether F_Γ is intrinsically infinite."""
    with _session("cyclic", problem, as_json, verbose, quiet) as loaded:
        indices = sorted(cyclic_types(loaded.equations))
        everywhere = intrinsic_infinite(loaded.equations)
        _emit(
            "cyclic",
            as_json,
            indices,
            {"intrinsic_infinite": everywhere},
            [f"intrinsically infinite: {_render(everywhere)}"],
        )


if __name__ == "__main__":
    cli()
