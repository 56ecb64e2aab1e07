"""companion-algebra command-line application.

``run(argv)`` parses arguments, merges them over the configuration file,
dispatches to one command handler and prints the resulting ``Report``.
Exceptions are mapped to exit codes at this single point.
"""

import argparse
import json
import logging
import os
import random
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

from .cli import parse_args, print_report, validate_args
from .config import load_config
from .constants import (
    EXIT_DOMAIN,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_USAGE,
    LOG_FORMAT,
)
from .core import (
    CompanionPair,
    commutant,
    common_invariant_subspaces,
    companion,
    coord_identity_checks,
    det_identity_check,
    generates_full,
    h_annihilator_check,
    lattice_index,
    rank_and_basis,
    relations_report,
    scalar_lemma_check,
    solve_q,
    span_closure_oracle,
)
from .errors import DomainError, InvariantViolation, ParseError
from .matrices import Matrix
from .models import Report, element_text, matrix_rows
from .poly import MonicPoly, Poly, format_poly, parse_monic, parse_poly, random_monic, resultant, sylvester_matrix
from .presentation import Variant, choose_variant, emit_presentation, verify_presentation
from .rings import RingDescriptor, is_unit, parse_element, parse_ring_spec, random_element
from .sweep import SweepRunner

_stderr_handler: Optional[logging.Handler] = None


def setup_logging(settings: Dict[str, Any], verbose: bool = False) -> None:
    """Configure logging."""
    global _stderr_handler
    level = getattr(logging, settings["log_level"], logging.INFO)
    log_file = settings["log_file"]
    try:
        os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
        logging.basicConfig(filename=log_file, level=level, format=LOG_FORMAT)
    except OSError as e:
        print(f"Warning: cannot open log file {log_file}: {e}", file=sys.stderr)
        logging.basicConfig(handlers=[logging.NullHandler()], level=level)

    if verbose and _stderr_handler is None:
        _stderr_handler = logging.StreamHandler(sys.stderr)
        _stderr_handler.setLevel(logging.DEBUG)
        _stderr_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root = logging.getLogger()
        root.addHandler(_stderr_handler)
        root.setLevel(logging.DEBUG)


def merge_settings(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """Command-line flags override the configuration file."""
    settings = dict(config)
    for key in ("ring", "trials", "max_word_len", "seed", "coeff_bound", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


# =============================================================================
# Input helpers
# =============================================================================

def _pair(args: argparse.Namespace, ring: RingDescriptor) -> CompanionPair:
    f = parse_monic(args.f, ring)
    g = parse_monic(args.g, ring)
    return CompanionPair.build(f, g)


def _pair_inputs(pair: CompanionPair) -> Dict[str, Any]:
    return {"ring": pair.ring.spec, "n": pair.n, "f": format_poly(pair.f), "g": format_poly(pair.g)}


def _family(args: argparse.Namespace, ring: RingDescriptor) -> List[MonicPoly]:
    texts = [t for t in (args.f, args.g) if t] + list(args.polys)
    return [parse_monic(t, ring) for t in texts]


def _family_inputs(ring: RingDescriptor, polys: List[MonicPoly]) -> Dict[str, Any]:
    return {"ring": ring.spec, "polys": [format_poly(p) for p in polys]}


def parse_matrix(text: str, ring: RingDescriptor) -> Matrix:
    """Parse a JSON list of rows; entries may be numbers or element strings."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid matrix JSON: {e}") from e
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("a matrix must be a non-empty JSON list of rows")
    for row in rows:
        for entry in row:
            if isinstance(entry, (bool, float)) or not isinstance(entry, (int, str)):
                raise ParseError(f"matrix entries must be integers or strings, got {entry!r}")
    try:
        return Matrix.from_rows(ring, [[parse_element(str(e), ring) for e in row] for row in rows])
    except DomainError as e:
        raise ParseError(str(e)) from e


def _random_pairs(
    ring: RingDescriptor, degree: int, count: int, seed: int, bound: int
) -> List[Tuple[MonicPoly, MonicPoly]]:
    rng = random.Random(seed)
    return [(random_monic(ring, degree, rng, bound), random_monic(ring, degree, rng, bound)) for _ in range(count)]


def _sweep(
    args: argparse.Namespace,
    settings: Dict[str, Any],
    ring: RingDescriptor,
    check: Callable[[CompanionPair], Any],
    verdict_key: str,
) -> Report:
    pairs = _random_pairs(ring, args.degree, args.sweep, settings["seed"], settings["coeff_bound"])

    def job(fg: Tuple[MonicPoly, MonicPoly]) -> Dict[str, Any]:
        pair = CompanionPair.build(*fg)
        entry = {"f": format_poly(pair.f), "g": format_poly(pair.g)}
        entry.update(check(pair).to_dict())
        return entry

    with SweepRunner(settings["workers"]) as runner:
        results = runner.map(job, pairs)
    logging.info(f"{args.command} sweep: {len(results)} pairs of degree {args.degree} over {ring}")
    return Report(
        subcommand=args.command,
        inputs={
            "ring": ring.spec,
            "degree": args.degree,
            "sweep": args.sweep,
            "seed": settings["seed"],
            "coeff_bound": settings["coeff_bound"],
        },
        result={"pairs": results, "count": len(results)},
        verdicts={verdict_key: all(entry[verdict_key] for entry in results)},
    )


# =============================================================================
# Command handlers
# =============================================================================

def cmd_resultant(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    res = resultant(pair.f, pair.g)
    return Report(
        subcommand=args.command,
        inputs=_pair_inputs(pair),
        result={"resultant": element_text(res), "sylvester": matrix_rows(sylvester_matrix(pair.f, pair.g))},
        verdicts={"unit": is_unit(res), "zero": res.is_zero()},
    )


def cmd_det_identity(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    if args.sweep:
        return _sweep(args, settings, ring, det_identity_check, "equal")
    pair = _pair(args, ring)
    report = det_identity_check(pair)
    return Report(args.command, _pair_inputs(pair), report.to_dict(), {"equal": report.equal})


def cmd_index(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    if args.sweep:
        return _sweep(args, settings, ring, lattice_index, "agree")
    pair = _pair(args, ring)
    report = lattice_index(pair)
    return Report(
        args.command,
        _pair_inputs(pair),
        report.to_dict(),
        {"agree": report.agree, "finite": not report.rank_deficient},
    )


def cmd_generates(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    polys = _family(args, ring)
    verdict = generates_full(polys)
    return Report(args.command, _family_inputs(ring, polys), verdict.to_dict(), {"generates": verdict.generates})


def cmd_basis(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    basis = rank_and_basis(pair)
    annihilator = h_annihilator_check(pair)
    result = basis.to_dict()
    result["h_annihilates"] = annihilator.holds
    return Report(
        args.command,
        _pair_inputs(pair),
        result,
        {"rank": basis.rank, "full": basis.rank == pair.n * pair.n},
    )


def cmd_relations(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    report = relations_report(pair)
    rng = random.Random(settings["seed"])
    bound = settings["coeff_bound"]
    coordinates_hold = coord_identity_checks(pair, rng=rng, bound=bound)
    candidates = [Poly.constant(ring, k) for k in range(3)]
    candidates += [Poly(ring, tuple(random_element(ring, rng, bound) for _ in range(pair.n))) for _ in range(10)]
    result = report.to_dict()
    result["checks"]["coordinate_identities"] = coordinates_hold
    result["scalar_lemma_qualifying"] = scalar_lemma_check(pair, candidates)
    return Report(args.command, _pair_inputs(pair), result, {"all_hold": all(result["checks"].values())})


def cmd_solve_q(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    report = solve_q(pair)
    return Report(args.command, _pair_inputs(pair), report.to_dict(), {"unique": report.unique})


def _variant(args: argparse.Namespace, pair: CompanionPair) -> Variant:
    return choose_variant(pair) if args.variant == "auto" else Variant(args.variant)


def cmd_presentation(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    doc = emit_presentation(pair, _variant(args, pair))
    result = doc.to_dict()
    result["text"] = doc.to_text()
    return Report(args.command, _pair_inputs(pair), result, {"variant": doc.variant.value})


def cmd_verify_presentation(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    report = verify_presentation(
        pair,
        _variant(args, pair),
        trials=settings["trials"],
        max_len=settings["max_word_len"],
        seed=settings["seed"],
    )
    inputs = _pair_inputs(pair)
    inputs.update({"trials": settings["trials"], "max_word_len": settings["max_word_len"], "seed": settings["seed"]})
    return Report(args.command, inputs, report.to_dict(), {"passed": report.passed})


def cmd_commutant(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    pair = _pair(args, ring)
    report = commutant(pair)
    return Report(args.command, _pair_inputs(pair), report.to_dict(), {"scalar_only": report.dimension == 1})


def cmd_invariant_subspaces(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    polys = _family(args, ring)
    factors = [parse_poly(t, ring) for t in args.factor] if args.factor else None
    report = common_invariant_subspaces(polys, factors)
    return Report(
        args.command,
        _family_inputs(ring, polys),
        report.to_dict(),
        {"exists_nontrivial": report.exists_nontrivial},
    )


def cmd_oracle_span(args: argparse.Namespace, settings: Dict[str, Any], ring: RingDescriptor) -> Report:
    polys = _family(args, ring)
    generators = [companion(p) for p in polys]
    generators += [parse_matrix(text, ring) for text in args.matrix or []]
    report = span_closure_oracle(generators)
    inputs = _family_inputs(ring, polys)
    inputs["matrices"] = [matrix_rows(m) for m in generators[len(polys):]]
    n = generators[0].rows
    return Report(args.command, inputs, report.to_dict(), {"full": report.dimension == n * n})


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any], RingDescriptor], Report]] = {
    "resultant": cmd_resultant,
    "det-identity": cmd_det_identity,
    "index": cmd_index,
    "generates": cmd_generates,
    "basis": cmd_basis,
    "relations": cmd_relations,
    "solve-q": cmd_solve_q,
    "presentation": cmd_presentation,
    "verify-presentation": cmd_verify_presentation,
    "commutant": cmd_commutant,
    "invariant-subspaces": cmd_invariant_subspaces,
    "oracle-span": cmd_oracle_span,
}


def dispatch(args: argparse.Namespace, settings: Dict[str, Any]) -> Report:
    """Run the handler for ``args.command``."""
    ring = parse_ring_spec(settings["ring"])
    logging.debug(f"Running {args.command} over {ring}")
    return COMMANDS[args.command](args, settings, ring)


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        # argparse exits on usage errors, --help and --version
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if not validate_args(args):
        return EXIT_USAGE

    settings = merge_settings(args, load_config(args.config))
    setup_logging(settings, args.verbose)

    try:
        report = dispatch(args, settings)
    except ParseError as e:
        logging.warning(f"Parse error in {args.command}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        logging.error(f"Invariant violation in {args.command}: {e.format_dump()}")
        print(f"Invariant violation (this is a bug): {e.format_dump()}", file=sys.stderr)
        return EXIT_INVARIANT
    except DomainError as e:
        logging.warning(f"Domain error in {args.command}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DOMAIN

    print_report(report, args.json)
    return EXIT_OK


def main() -> None:
    """Entry point for the companion-algebra console script."""
    sys.exit(run())
