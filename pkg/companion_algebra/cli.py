"""Command-line interface argument parsing module."""

import argparse
import json
import re
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .constants import (
    MAX_COEFF_BOUND,
    MAX_DEGREE,
    MAX_TRIALS,
    MAX_WORD_LEN,
    MAX_WORKERS,
    MIN_DEGREE,
    PROG_NAME,
    VARIANTS,
)
from .models import Report

# Subcommands that take exactly one pair (f, g)
PAIR_COMMANDS = (
    "resultant",
    "det-identity",
    "index",
    "basis",
    "relations",
    "solve-q",
    "presentation",
    "verify-presentation",
    "commutant",
)
# Subcommands that take a family of polynomials
FAMILY_COMMANDS = ("generates", "invariant-subspaces", "oracle-span")
SWEEP_COMMANDS = ("det-identity", "index")

# Arguments such as "-x^2+1" or "-2+x^2" are polynomials, not options
_NEGATIVE_TERM_RE = re.compile(r"^-[0-9x(i]")

COMMAND_HELP = {
    "resultant": "Sylvester matrix and resultant Res(f, g)",
    "det-identity": "Check det M(f,g) = Res(f,g)^(n-1)",
    "index": "Lattice index of R<C,D> in M_n(R) over Z or Z[i]",
    "generates": "Decide whether the companion matrices generate M_n(R)",
    "basis": "Rank and monomial basis of R<C,D> over Z, Q or GF(p)",
    "relations": "a_j scalars, p_j and P_j polynomials and their identities",
    "solve-q": "All Q with g(C) Q = -f(D) over a field",
    "presentation": "Emit a presentation of R<C,D> by generators and relations",
    "verify-presentation": "Randomized soundness check of a presentation",
    "commutant": "Matrices commuting with both C and D over a field",
    "invariant-subspaces": "Common invariant subspaces of several companion matrices",
    "oracle-span": "Brute-force closure of the span generated by matrices",
}


def get_version() -> str:
    """Get current version from package metadata."""
    return __version__


def _common_parser() -> argparse.ArgumentParser:
    """Options shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)

    input_group = common.add_argument_group("Input options")
    input_group.add_argument(
        "--ring", "-r",
        metavar="SPEC",
        help="Coefficient ring: z, q, zmod:<m>, gf:<p> or zi (default from config, else z)",
    )
    input_group.add_argument("-f", metavar="POLY", help="Monic polynomial f, e.g. 'x^3 - 2'")
    input_group.add_argument("-g", metavar="POLY", help="Monic polynomial g of the same degree")
    input_group.add_argument(
        "polys",
        nargs="*",
        metavar="POLY",
        help="Further polynomials for family commands",
    )

    output_group = common.add_argument_group("Output options")
    output_group.add_argument("--json", action="store_true", help="Print the report as JSON")

    verify_group = common.add_argument_group("Verification options")
    verify_group.add_argument("--trials", type=int, metavar="K", help="Random trials (default 100)")
    verify_group.add_argument(
        "--max-word-len", type=int, metavar="L", help="Maximum random word length (default 8)"
    )
    verify_group.add_argument("--seed", type=int, metavar="INT", help="Seed for randomized checks (default 0)")
    verify_group.add_argument(
        "--coeff-bound", type=int, metavar="B", help="Random coefficients lie in [-B, B] (default 9)"
    )

    config_group = common.add_argument_group("Configuration options")
    config_group.add_argument("--config", metavar="FILE", help="Use alternative configuration file")
    config_group.add_argument("--workers", type=int, metavar="N", help="Threads for sweeps (default 1)")
    config_group.add_argument("--verbose", action="store_true", help="Also log to stderr at DEBUG level")
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create argument parser for companion-algebra.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog=PROG_NAME,
        description="Exact algebra of pairs of companion matrices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  {PROG_NAME} resultant --ring z -f "x^2+1" -g "x^2-1"
  {PROG_NAME} det-identity --ring z --sweep 200 --degree 3 --seed 1
  {PROG_NAME} index --ring z -f "x^2" -g "x^2-2"
  {PROG_NAME} generates --ring gf:5 "x^2" "x^2+1"
  {PROG_NAME} presentation --ring q -f "x^3-2" -g "x^3-3"
  {PROG_NAME} verify-presentation --ring q -f "x^3-2" -g "x^3-3" --trials 500
  {PROG_NAME} oracle-span --ring q --matrix "[[1,0,0],[0,2,0],[0,0,3]]" --matrix "[[1,1,1],[1,1,1],[1,1,1]]"

Polynomials use the variable x: "x^3 - 2*x + 1/2", "(1+2i)*x^2 + x - i",
or JSON {{"coeffs": ["1", "0", "-2"]}} with constant term first.
A leading minus sign is accepted ("-2 + x^2"); "--" also ends option parsing.

Exit codes: 0 success, 2 parse/usage error, 3 domain error, 4 invariant violation.
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")

    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    commands: Dict[str, argparse.ArgumentParser] = {}
    for name, help_text in COMMAND_HELP.items():
        commands[name] = subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)

    for name in SWEEP_COMMANDS:
        sweep_group = commands[name].add_argument_group("Sweep options")
        sweep_group.add_argument("--sweep", type=int, metavar="K", help="Check K seeded random pairs instead of -f/-g")
        sweep_group.add_argument("--degree", type=int, metavar="N", help="Degree of the random pairs")

    for name in ("presentation", "verify-presentation"):
        commands[name].add_argument(
            "--variant",
            choices=("auto",) + VARIANTS,
            default="auto",
            help="Presentation variant (default: the most specific one that applies)",
        )

    commands["invariant-subspaces"].add_argument(
        "--factor",
        action="append",
        metavar="POLY",
        help="Monic factor of the gcd to build a subspace for (repeatable)",
    )
    commands["oracle-span"].add_argument(
        "--matrix",
        action="append",
        metavar="JSON",
        help="Extra generator as a JSON list of rows (repeatable)",
    )
    return parser


def parse_args(args: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        args: Arguments list (uses sys.argv if None)

    Returns:
        Parsed arguments namespace
    """
    parser = create_parser()
    argv = sys.argv[1:] if args is None else list(args)
    return parser.parse_args([_protect_leading_minus(a) for a in argv])


def _protect_leading_minus(arg: str) -> str:
    """Prefix a space so argparse treats a negative polynomial as a value."""
    if _NEGATIVE_TERM_RE.match(arg):
        return " " + arg
    return arg


def _error(message: str) -> bool:
    print(f"Error: {message}", file=sys.stderr)
    return False


def validate_args(args: argparse.Namespace) -> bool:
    """Validate parsed arguments.

    Args:
        args: Parsed arguments namespace

    Returns:
        True if arguments are valid, False otherwise
    """
    if args.trials is not None and not 1 <= args.trials <= MAX_TRIALS:
        return _error(f"Trials must be between 1 and {MAX_TRIALS}, got {args.trials}")
    if args.max_word_len is not None and not 0 <= args.max_word_len <= MAX_WORD_LEN:
        return _error(f"Max word length must be between 0 and {MAX_WORD_LEN}, got {args.max_word_len}")
    if args.coeff_bound is not None and not 1 <= args.coeff_bound <= MAX_COEFF_BOUND:
        return _error(f"Coefficient bound must be between 1 and {MAX_COEFF_BOUND}, got {args.coeff_bound}")
    if args.workers is not None and not 1 <= args.workers <= MAX_WORKERS:
        return _error(f"Workers must be between 1 and {MAX_WORKERS}, got {args.workers}")

    sweep = getattr(args, "sweep", None)
    if sweep is not None:
        if sweep < 1:
            return _error(f"Sweep size must be positive, got {sweep}")
        if args.degree is None or not MIN_DEGREE <= args.degree <= MAX_DEGREE:
            return _error(f"--sweep needs --degree between {MIN_DEGREE} and {MAX_DEGREE}")
        if args.f or args.g or args.polys:
            return _error("--sweep draws random pairs; do not pass polynomials")
        return True

    if args.command in PAIR_COMMANDS:
        if not (args.f and args.g):
            return _error(f"{args.command} needs both -f and -g")
        if args.polys:
            return _error(f"{args.command} takes no positional polynomials")
    elif args.command in FAMILY_COMMANDS:
        count = len(args.polys) + bool(args.f) + bool(args.g)
        if args.command == "oracle-span":
            count += len(args.matrix or [])
        if count == 0:
            return _error(f"{args.command} needs at least one polynomial")
    return True


# =============================================================================
# Rendering
# =============================================================================

def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, dict) and "text" in value and set(value) <= {"text", "coeffs"}:
        return value["text"]
    if isinstance(value, list) and all(not isinstance(v, (list, dict)) for v in value):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    return str(value)


def _render_lines(data: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, str) and "\n" in value:
                lines.append(f"{pad}{key}:")
                lines.extend(f"{pad}  {line}" for line in value.splitlines())
            elif isinstance(value, dict) and not (set(value) <= {"text", "coeffs"} and "text" in value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_lines(value, indent + 1))
            elif isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
                lines.append(f"{pad}{key}:")
                for item in value:
                    if isinstance(item, dict):
                        nested = _render_lines(item, indent + 2)
                        if nested:
                            nested[0] = f"{pad}  - {nested[0].lstrip()}"
                        lines.extend(nested)
                    else:
                        lines.append(f"{pad}  - {_format_value(item)}")
            else:
                lines.append(f"{pad}{key}: {_format_value(value)}")
    else:
        lines.append(f"{pad}{_format_value(data)}")
    return lines


def render_text(report: Report) -> str:
    """Human-readable rendering of a report."""
    lines = [f"== {report.subcommand} =="]
    if report.inputs:
        lines.append("Inputs:")
        lines.extend(_render_lines(report.inputs, 1))
    if "text" in report.result:
        lines.append(report.result["text"])
        rest = {k: v for k, v in report.result.items() if k != "text"}
    else:
        rest = report.result
    if rest:
        lines.append("Result:")
        lines.extend(_render_lines(rest, 1))
    if report.verdicts:
        lines.append("Verdicts:")
        lines.extend(_render_lines(report.verdicts, 1))
    return "\n".join(lines)


def render_json(report: Report) -> str:
    """Schema-stable JSON; algebraic values are exact decimal strings."""
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False)


def print_report(report: Report, as_json: bool = False) -> None:
    """Print a report to stdout.

    Args:
        report: Report to print
        as_json: Print JSON instead of text
    """
    print(render_json(report) if as_json else render_text(report))
