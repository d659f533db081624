"""
Command-line frontend for the deep-hole toolkit.

Every subcommand prints one JSON payload on stdout (CSV for `deephole census
--csv`) and logs to stderr. Exit codes: 0 success, 1 negative answer,
2 invalid input, 3 budget exceeded. `--help` exits 0 with {"help": usage}.
"""
import argparse
import contextlib
import csv
import io
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from loguru import logger
from pydantic import BaseModel

from algebra.gf import FieldElement, FieldSpec, field_of_order
from algebra.mpoly import MPoly, bivariate_total_sum
from algebra.parsing import parse_field, parse_poly_arg
from algebra.upoly import UPoly, roots_in_set
from models.bounds_schema import PointCountReport
from models.code_schema import CodeDescriptor, RSCode
from models.payloads import MPolyPayload, UPolyPayload
from models.reduction_schema import SubsetSumInstance
from models.surface_schema import MonicTail
from solvers.bounds import cafure_matera_lower, get_calculator
from solvers.reduction import get_reducer
from solvers.rscode import get_oracle
from solvers.surface import get_engine
from utils.config import get_settings
from utils.errors import BudgetExceededError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]

_sink_id: Optional[int] = None

# payload keys accepted by --json in place of option names
JSON_ALIASES = {"eval_set": "eval"}


class CommandResult(BaseModel):
    """Exit code plus the payload written to stdout (None for codes 2 and 3)."""
    exit_code: int
    payload: Optional[Any] = None
    text: Optional[str] = None


def configure_logging(level: str) -> None:
    """Route loguru to stderr at `level`, replacing the sink installed earlier."""
    global _sink_id
    if _sink_id is None:
        logger.remove()
    else:
        logger.remove(_sink_id)
    _sink_id = logger.add(sys.stderr, level=level.upper(), format="{time:HH:mm:ss} | {level} | {message}")


# -- argument coercion (values may come from flags or from a --json file)

def _need(args: argparse.Namespace, name: str) -> Any:
    value = getattr(args, name, None)
    if value is None:
        raise ValueError(f"missing --{name.replace('_', '-')}")
    return value


def _as_field(value: Any) -> FieldSpec:
    if isinstance(value, dict):
        return FieldSpec.model_validate(value)
    if isinstance(value, int):
        return field_of_order(value)
    return parse_field(str(value))


def _as_ints(value: Any) -> List[int]:
    if isinstance(value, list):
        return [int(v) for v in value]
    if isinstance(value, int):
        return [value]
    text = str(value).strip()
    if text.startswith("["):
        return [int(v) for v in json.loads(text)]
    if not text:
        return []
    return [int(v) for v in text.split(",")]


def _as_upoly(value: Any, field: FieldSpec) -> UPoly:
    if isinstance(value, list):
        return UPoly(field, value)
    if isinstance(value, dict):
        return UPolyPayload.model_validate({"field": field, **value}).to_poly()
    return parse_poly_arg(str(value), field)


def _as_code(args: argparse.Namespace, field: FieldSpec) -> RSCode:
    eval_set = _need(args, "eval")
    if eval_set not in ("star", "full"):
        eval_set = _as_ints(eval_set)
    return CodeDescriptor(field=field, eval_set=eval_set, k=_need(args, "k")).to_code()


def _as_tail(args: argparse.Namespace, field: FieldSpec) -> MonicTail:
    k, d = int(_need(args, "k")), int(_need(args, "d"))
    coeffs = _as_ints(args.coeffs) if args.coeffs is not None else [0] * d
    return MonicTail(field=field, k=k, d=d, coeffs=tuple(coeffs))


def _merge_json_input(args: argparse.Namespace) -> None:
    """Fill options not given on the command line from the --json object."""
    if not args.json:
        return
    if args.json == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.json, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("--json input must be a JSON object")
    if "terms" in data and "mpoly" not in data:
        # a bare MPolyPayload: {"field", "vars", "terms"}
        data = {**data, "mpoly": {"vars": data.get("vars"), "terms": data["terms"]}}
    for key, value in data.items():
        attr = key.replace("-", "_")
        attr = JSON_ALIASES.get(attr, attr)
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)


def _apply_fallbacks(args: argparse.Namespace) -> None:
    """Defaults for options still unset after flags and --json are merged."""
    for name, value in getattr(args, "fallbacks", {}).items():
        if getattr(args, name, None) is None:
            setattr(args, name, value)


def _upoly_json(poly: UPoly) -> Dict[str, Any]:
    return UPolyPayload.from_poly(poly).model_dump(mode="json")


def _degree(poly: UPoly) -> Optional[int]:
    return None if poly.is_zero else int(poly.degree)


# -- handlers: each returns a CommandResult

def cmd_field(args: argparse.Namespace) -> CommandResult:
    """Describe a field, optionally applying one operation to encodings."""
    field = _as_field(_need(args, "field"))
    payload: Dict[str, Any] = {
        "field": field.model_dump(mode="json"),
        "q": field.q,
        "prime_field": field.is_prime_field,
    }
    if args.op:
        a = FieldElement(field, field.check(int(_need(args, "a"))))
        if args.op == "neg":
            result = -a
        elif args.op == "inv":
            result = a.inverse()
        elif args.op == "pow":
            result = a ** int(_need(args, "b"))
        else:
            b = FieldElement(field, field.check(int(_need(args, "b"))))
            result = {"add": a + b, "sub": a - b, "mul": a * b, "div": a / b}[args.op]
        payload.update(op=args.op, result=int(result), coeffs=list(result.coeffs))
    return CommandResult(exit_code=EXIT_OK, payload=payload)


def cmd_poly(args: argparse.Namespace) -> CommandResult:
    """Parse a polynomial and report degree, values, roots and a remainder."""
    field = _as_field(_need(args, "field"))
    poly = _as_upoly(_need(args, "poly"), field)
    payload: Dict[str, Any] = {
        "poly": _upoly_json(poly),
        "text": str(poly),
        "degree": _degree(poly),
    }
    if args.at is not None:
        payload["values"] = [[x, poly.evaluate(field.check(x))] for x in _as_ints(args.at)]
    if args.roots:
        roots = roots_in_set(poly, [FieldElement(field, x) for x in field.encodings()])
        payload["roots"] = sorted(int(r) for r in roots)
    if args.mod is not None:
        quotient, remainder = poly.divmod(_as_upoly(args.mod, field))
        payload["quotient"] = _upoly_json(quotient)
        payload["remainder"] = _upoly_json(remainder)
    return CommandResult(exit_code=EXIT_OK, payload=payload)


def cmd_deephole_check(args: argparse.Namespace) -> CommandResult:
    """Exact distance of one word; exit 1 when it is not a deep hole."""
    field = _as_field(_need(args, "field"))
    code = _as_code(args, field)
    if args.word is not None:
        word = code.word(_as_ints(args.word))
    else:
        generator = _as_upoly(_need(args, "poly"), field)
        word = code.word([generator.evaluate(x) for x in code.eval_set])

    verdict = get_oracle().distance_to_code(code, word, oracle=args.oracle or "auto")
    payload = {
        "code": CodeDescriptor.from_code(code).model_dump(mode="json"),
        "word": list(word.values),
        **verdict.model_dump(mode="json", by_alias=True),
    }
    return CommandResult(exit_code=EXIT_OK if verdict.is_deep_hole else EXIT_NEGATIVE, payload=payload)


def cmd_deephole_census(args: argparse.Namespace) -> CommandResult:
    """Exhaustive census; exit 1 when the count falls below (q-1) q^k."""
    field = _as_field(_need(args, "field"))
    code = _as_code(args, field)
    oracle = get_oracle()
    bound = (field.q - 1) * field.q**code.k

    if args.csv:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["word_encoding", "distance", "is_deep_hole"])
        count = 0
        for enc, distance, deep in oracle.census_rows(code, jobs=args.jobs):
            writer.writerow([enc, distance, "true" if deep else "false"])
            count += deep
        return CommandResult(exit_code=EXIT_OK if count >= bound else EXIT_NEGATIVE, text=buffer.getvalue())

    census = oracle.enumerate_deep_holes(code, sample_size=args.sample, jobs=args.jobs)
    return CommandResult(
        exit_code=EXIT_OK if census.meets_corollary else EXIT_NEGATIVE,
        payload=census.model_dump(mode="json"),
    )


def cmd_surface_compute_l(args: argparse.Namespace) -> CommandResult:
    field = _as_field(_need(args, "field"))
    instance = get_engine().compute_L(_as_tail(args, field))
    payload = instance.model_dump(mode="json")
    payload["L_text"] = str(instance.L)
    payload["top_form_text"] = str(instance.top_form)
    return CommandResult(exit_code=EXIT_OK, payload=payload)


def cmd_surface_chi(args: argparse.Namespace) -> CommandResult:
    """Specialized top form versus the direct bivariate sum; exit 1 on mismatch."""
    field = _as_field(_need(args, "field"))
    report = get_engine().check_chi_specialization(int(_need(args, "d")), int(_need(args, "k")), field)
    return CommandResult(exit_code=EXIT_OK if report.equal else EXIT_NEGATIVE, payload=report.model_dump(mode="json"))


def cmd_surface_independence(args: argparse.Namespace) -> CommandResult:
    field = _as_field(_need(args, "field"))
    report = get_engine().verify_top_form_independence(
        int(_need(args, "k")), int(_need(args, "d")), args.trials, field, seed=args.seed
    )
    return CommandResult(
        exit_code=EXIT_OK if report.all_equal else EXIT_NEGATIVE, payload=report.model_dump(mode="json")
    )


def cmd_surface_find_point(args: argparse.Namespace) -> CommandResult:
    """
    Search L_f for a distinct-coordinate zero; exit 1 when none exists.

    With --eval, coordinates are restricted to the evaluation set and the
    witness codeword (t = 0) is reconstructed from the point.
    """
    field = _as_field(_need(args, "field"))
    tail = _as_tail(args, field)
    engine = get_engine()
    code = _as_code(args, field) if args.eval is not None else None
    instance = engine.compute_L(tail)
    result = engine.find_distinct_point(
        instance,
        constraint=args.constraint,
        within=code.eval_set if code is not None else None,
        mode=args.mode,
        attempts=args.attempts,
        seed=args.seed,
        jobs=args.jobs,
    )
    payload = result.model_dump(mode="json")
    if code is not None and result.point is not None:
        witness = engine.witness_from_point(tail, result.point, code)
        payload["witness"] = witness.model_dump(mode="json")
    return CommandResult(exit_code=EXIT_OK if result.found else EXIT_NEGATIVE, payload=payload)


def cmd_surface_smooth_scan(args: argparse.Namespace) -> CommandResult:
    report = get_engine().curve_smoothness_scan(
        int(_need(args, "d")), int(_need(args, "p")), args.e, jobs=args.jobs
    )
    return CommandResult(exit_code=EXIT_OK if report.smooth else EXIT_NEGATIVE, payload=report.model_dump(mode="json"))


def cmd_bounds_margin(args: argparse.Namespace) -> CommandResult:
    report = get_calculator().theorem_margin(
        int(_need(args, "q")), int(_need(args, "k")), int(_need(args, "d")), args.variant
    )
    return CommandResult(exit_code=EXIT_OK if report.applies else EXIT_NEGATIVE, payload=report.model_dump(mode="json"))


def cmd_bounds_threshold(args: argparse.Namespace) -> CommandResult:
    report = get_calculator().certified_threshold(
        int(_need(args, "k")), int(_need(args, "d")), args.variant, args.limit
    )
    return CommandResult(
        exit_code=EXIT_OK if report.q is not None else EXIT_NEGATIVE, payload=report.model_dump(mode="json")
    )


def cmd_bounds_count(args: argparse.Namespace) -> CommandResult:
    """
    Exact zero count of sum_{i+j<=D} x^i y^j (--curve D) or of a JSON
    polynomial (the "mpoly" key of --json); exit 1 when there are no zeros.
    """
    field = _as_field(_need(args, "field"))
    poly: MPoly
    if args.curve is not None:
        poly = bivariate_total_sum(int(args.curve), field)
    else:
        mpoly = _need(args, "mpoly")
        poly = MPolyPayload.model_validate({"field": field, **mpoly}).to_poly()
    count = get_calculator().exact_point_count(poly, field, args.constraint, jobs=args.jobs)

    degree = 0 if poly.is_zero else int(poly.total_degree)
    lower = None
    if args.constraint == "none" and poly.nvars >= 2 and degree >= 1:
        lower = cafure_matera_lower(field.q, poly.nvars, degree)
    report = PointCountReport(
        q=field.q, nvars=poly.nvars, constraint=args.constraint, count=count, degree=degree, lower_bound=lower
    )
    return CommandResult(exit_code=EXIT_OK if count > 0 else EXIT_NEGATIVE, payload=report.model_dump(mode="json"))


def cmd_reduce_subset_sum(args: argparse.Namespace) -> CommandResult:
    """Both sides of the subset-sum reduction; exit 1 when the iff fails."""
    field = _as_field(_need(args, "field"))
    inst = SubsetSumInstance(
        field=field,
        elements=tuple(_as_ints(_need(args, "set"))),
        target=int(_need(args, "target")),
        size=int(_need(args, "size")),
    )
    report = get_reducer().verify_equivalence(inst, oracle=args.oracle or "auto")
    payload = report.model_dump(mode="json", by_alias=True)
    return CommandResult(
        exit_code=EXIT_OK if report.equivalence_holds else EXIT_NEGATIVE, payload=payload
    )


# -- parser

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized trials")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes for exhaustive scans")
    common.add_argument("--log-level", choices=LOG_LEVELS, default=None, help="stderr log level")
    common.add_argument("--json", metavar="FILE", default=None, help="Read options from a JSON object ('-' = stdin)")
    return common


def _add_leaf(
    group: "argparse._SubParsersAction",
    name: str,
    handler: Callable[[argparse.Namespace], CommandResult],
    common: argparse.ArgumentParser,
    help_text: str,
) -> argparse.ArgumentParser:
    parser = group.add_parser(name, parents=[common], help=help_text)
    parser.set_defaults(handler=handler, fallbacks={})
    return parser


def _fallback(parser: argparse.ArgumentParser, flag: str, value: Any, **kwargs: Any) -> None:
    """Add `flag` with a None parse default; `value` applies after --json merging."""
    kwargs["help"] = f"{kwargs.get('help', '')} (default: {value})".lstrip()
    parser.add_argument(flag, default=None, **kwargs)
    parser.get_default("fallbacks")[flag.lstrip("-").replace("-", "_")] = value


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with every subcommand."""
    common = _common_options()
    parser = argparse.ArgumentParser(prog="deephole", description="Reed-Solomon deep-hole toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    p = _add_leaf(commands, "field", cmd_field, common, "Describe a finite field")
    p.add_argument("--field")
    p.add_argument("--op", choices=["add", "sub", "mul", "div", "neg", "inv", "pow"])
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)

    p = _add_leaf(commands, "poly", cmd_poly, common, "Inspect a univariate polynomial")
    p.add_argument("--field")
    p.add_argument("--poly")
    p.add_argument("--at", help="Comma-separated encodings to evaluate at")
    p.add_argument("--roots", action="store_true", default=None)
    p.add_argument("--mod", help="Divisor for a quotient and remainder")

    deephole = commands.add_parser("deephole", help="Distances and deep-hole censuses").add_subparsers(
        dest="action", required=True
    )
    p = _add_leaf(deephole, "check", cmd_deephole_check, common, "Distance of one word to the code")
    p.add_argument("--field")
    p.add_argument("--eval", help="star, full or a comma-separated evaluation set")
    p.add_argument("--k", type=int)
    p.add_argument("--poly", help="Generator of the word")
    p.add_argument("--word", help="Comma-separated word symbols")
    p.add_argument("--oracle", choices=["auto", "subset_interpolation", "codeword_enumeration"])
    p = _add_leaf(deephole, "census", cmd_deephole_census, common, "Count every deep hole of a code")
    p.add_argument("--field")
    p.add_argument("--eval")
    p.add_argument("--k", type=int)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--csv", action="store_true", default=None, help="Write one CSV row per word")

    surface = commands.add_parser("surface", help="Leading-coefficient hypersurface").add_subparsers(
        dest="action", required=True
    )
    for name, handler, help_text in [
        ("compute-l", cmd_surface_compute_l, "Symbolic L for a monic tail"),
        ("find-point", cmd_surface_find_point, "Search L for a distinct-coordinate zero"),
    ]:
        p = _add_leaf(surface, name, handler, common, help_text)
        p.add_argument("--field")
        p.add_argument("--k", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--coeffs", help="Comma-separated f_0..f_{d-1} (default all zero)")
    _fallback(p, "--constraint", "nonzero_distinct", choices=["nonzero_distinct", "distinct_only"])
    _fallback(p, "--mode", "exhaustive", choices=["exhaustive", "random"])
    p.add_argument("--attempts", type=int, default=None)
    p.add_argument("--eval", help="Restrict coordinates to star, full or a list, and rebuild the witness")

    p = _add_leaf(surface, "chi", cmd_surface_chi, common, "Check the specialized top form")
    p.add_argument("--field")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p = _add_leaf(surface, "independence", cmd_surface_independence, common, "Top form over random tails")
    p.add_argument("--field")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    _fallback(p, "--trials", 20, type=int)
    p = _add_leaf(surface, "smooth-scan", cmd_surface_smooth_scan, common, "Singular points of the curve")
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=int)
    _fallback(p, "--e", 1, type=int, help="Extension degree")

    bounds = commands.add_parser("bounds", help="Point-count bounds").add_subparsers(dest="action", required=True)
    p = _add_leaf(bounds, "margin", cmd_bounds_margin, common, "Positivity margin at q")
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--variant", choices=["published", "corrected"], default=None)
    p = _add_leaf(bounds, "threshold", cmd_bounds_threshold, common, "Smallest q where the margin is positive")
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--variant", choices=["published", "corrected"], default=None)
    _fallback(p, "--limit", 10**7, type=int, help="Largest q to try")
    p = _add_leaf(bounds, "count", cmd_bounds_count, common, "Exact zero count")
    p.add_argument("--field")
    p.add_argument("--curve", type=int, help="Degree D of sum_{i+j<=D} x^i y^j")
    _fallback(p, "--constraint", "none", choices=["none", "nonzero_distinct"])

    reduce_ = commands.add_parser("reduce", help="Reductions").add_subparsers(dest="action", required=True)
    p = _add_leaf(reduce_, "subset-sum", cmd_reduce_subset_sum, common, "Subset sum as a deep-hole question")
    p.add_argument("--field")
    p.add_argument("--set", help="Comma-separated distinct elements")
    p.add_argument("--target", type=int)
    p.add_argument("--size", type=int)
    p.add_argument("--oracle", choices=["auto", "subset_interpolation", "codeword_enumeration"])

    return parser


def execute(argv: Sequence[str]) -> CommandResult:
    """Parse `argv`, dispatch, and map failures onto the exit-code contract."""
    captured = io.StringIO()
    try:
        with contextlib.redirect_stdout(captured):
            args = build_parser().parse_args(list(argv))
    except SystemExit as exc:
        if exc.code in (0, None):
            # --help: the usage text becomes the payload
            return CommandResult(exit_code=EXIT_OK, payload={"help": captured.getvalue()})
        return CommandResult(exit_code=EXIT_INVALID)

    try:
        configure_logging(args.log_level or get_settings().log_level)
        _merge_json_input(args)
        _apply_fallbacks(args)
        return args.handler(args)
    except BudgetExceededError as exc:
        logger.error(f"Budget exceeded: {exc}")
        return CommandResult(exit_code=EXIT_BUDGET)
    except (ValueError, TypeError, ZeroDivisionError, OSError) as exc:
        # pydantic ValidationError and JSONDecodeError are ValueErrors
        logger.error(f"Invalid input: {exc}")
        return CommandResult(exit_code=EXIT_INVALID)


def run_command(argv: Sequence[str]) -> int:
    """Run one invocation, print its payload, and return the exit code."""
    result = execute(argv)
    if result.exit_code in (EXIT_OK, EXIT_NEGATIVE):
        if result.text is not None:
            sys.stdout.write(result.text)
        elif result.payload is not None:
            print(json.dumps(result.payload, indent=2))
    return result.exit_code


def main() -> None:
    """CLI entry point."""
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
