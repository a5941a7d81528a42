"""Command line interface: ``exactmaj {find,verify,derive,con,gallery} ...``.

Reports are written to standard output as ``key: value`` lines, logs go to
standard error. Exit codes: 0 for an affirmative result, 1 for a definite
negative one, 2 for usage, parse and resource errors.
"""
import argparse
import logging
import os
import sys
import warnings
from .congruences import (
    DEFAULT_MAX_CONGRUENCES,
    ORACLE_MAX_SIZE,
    all_congruences_bruteforce,
    check_distributive,
    check_modular,
    check_permutable,
    congruence_lattice,
)
from .constructions import (
    check_gumm_identities,
    check_maltsev_identities,
    derive_collapse,
    derive_gumm,
    derive_maltsev,
    derive_near_unanimity,
    derive_nu_from_nonexact,
)
from .identities import (
    check_exact_majority,
    check_m_majority,
    check_near_unanimity,
    describe_condition,
    equation_rows,
)
from .subpower import DEFAULT_MAX_CLOSURE, DEFAULT_MAX_WORK, find_exact_majority_term
from .terms import format_term, parse_term, term_size
from .tools.algebra_file import dumps, load_algebra
from .tools.gallery import gallery_names, get_algebra, is_gallery_name

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class CommandError(Exception):
    """A problem that ends the command with exit code 2."""


def _word(passed):
    return "pass" if passed else "FAIL"


def _emit(key, value):
    print(f"{key}: {value}")


def resolve_algebra(argument):
    """Load `argument` as an algebra file if it exists, otherwise as a gallery name."""
    if os.path.exists(argument):
        return load_algebra(argument)
    if is_gallery_name(argument):
        return get_algebra(argument)
    raise CommandError(f"{argument!r} is neither a file nor a gallery algebra")


def _parse_pattern(text):
    try:
        return tuple(int(i) for i in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"pattern must be comma separated positions, got {text!r}"
        ) from None


def _parse_rule(text):
    if text.startswith("collapse="):
        try:
            return ("collapse", int(text.split("=", 1)[1]))
        except ValueError:
            raise argparse.ArgumentTypeError(f"collapse needs an integer, got {text!r}") from None
    if text in ("maltsev", "nu", "nu-nonexact", "gumm"):
        return (text, None)
    raise argparse.ArgumentTypeError(
        f"rule must be one of maltsev, collapse=K, nu, nu-nonexact, gumm; got {text!r}"
    )


def cmd_find(args):
    algebra = resolve_algebra(args.algebra)
    condition = describe_condition(args.n, args.m)
    result = find_exact_majority_term(
        algebra,
        args.n,
        args.m,
        cap=args.max_closure,
        max_work=args.max_work,
        deduplicate=not args.no_dedup,
        patterns=args.pattern,
    )
    _emit("algebra", algebra.name)
    _emit("n", args.n)
    _emit("m", args.m)
    _emit("condition", condition)
    _emit("equation-rows", equation_rows(args.n, args.m))
    _emit("result", result.status)
    if result.status == "TRIVIAL-ONLY":
        _emit("certificate", result.certificate.describe())
        return EXIT_NEGATIVE
    if result.status == "OVERFLOW":
        _emit("cap", result.cap)
        if result.budget is not None:
            _emit("work-budget", result.budget)
        return EXIT_ERROR
    _emit("closure-size", result.closure_size)
    _emit("coordinates", result.coordinates)
    if not result.found:
        return EXIT_NEGATIVE
    if args.witness:
        _emit("term", format_term(result.term))
        _emit("term-size", term_size(result.term))
        verdict = check_exact_majority(
            algebra, result.term, args.n, args.m, patterns=args.pattern
        )
        _emit("recheck", _word(verdict.passed))
        if not verdict:
            raise CommandError(f"witness failed its recheck: {verdict.describe()}")
    return EXIT_OK


def cmd_verify(args):
    algebra = resolve_algebra(args.algebra)
    term = parse_term(args.term)
    if args.nonexact:
        check = f"m-majority({args.n},{args.m})"
        verdict = check_m_majority(algebra, term, args.n, args.m)
    else:
        check = f"exact({args.n},{args.m})"
        verdict = check_exact_majority(algebra, term, args.n, args.m)
    _emit("algebra", algebra.name)
    _emit("term", format_term(term))
    _emit("check", check)
    _emit("result", _word(verdict.passed))
    if not verdict:
        _emit("counterexample", verdict.describe())
        return EXIT_NEGATIVE
    return EXIT_OK


def _report_identities(key, verdicts):
    failed = [v for v in verdicts if not v]
    _emit(key, _word(not failed))
    for verdict in failed:
        _emit(f"{key}-counterexample", f"{verdict.label} at {verdict.describe()}")
    return not failed


def cmd_derive(args):
    algebra = resolve_algebra(args.algebra)
    u = parse_term(args.term)
    n, m = args.n, args.m
    rule, k = args.rule
    _emit("algebra", algebra.name)
    _emit("rule", rule if k is None else f"{rule}={k}")
    if rule == "nu-nonexact":
        precondition = check_m_majority(algebra, u, n, m)
    else:
        precondition = check_exact_majority(algebra, u, n, m)
    _emit("input", _word(precondition.passed))
    if not precondition:
        _emit("input-counterexample", precondition.describe())
        return EXIT_NEGATIVE
    if rule == "maltsev":
        t = derive_maltsev(u, n, m)
        _emit("t", format_term(t))
        passed = _report_identities("maltsev", check_maltsev_identities(algebra, t))
    elif rule == "collapse":
        t = derive_collapse(u, n, m, k)
        _emit("t", format_term(t))
        verdict = check_exact_majority(algebra, t, n // k, m // k)
        _emit(f"exact({n // k},{m // k})", _word(verdict.passed))
        passed = verdict.passed
    elif rule == "nu":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            t = derive_near_unanimity(u, n, m)
        arity = n // (n - m)
        _emit("t", format_term(t))
        verdict = check_near_unanimity(algebra, t, arity)
        _emit(f"near-unanimity({arity})", _word(verdict.passed))
        passed = verdict.passed
    elif rule == "nu-nonexact":
        v = derive_nu_from_nonexact(u, n, m)
        _emit("v", format_term(v))
        verdict = check_near_unanimity(algebra, v, m + 1)
        _emit(f"near-unanimity({m + 1})", _word(verdict.passed))
        passed = verdict.passed
    else:
        system = derive_gumm(u, n, m)
        for name, term in system.terms:
            _emit(name, format_term(term))
        passed = _report_identities("gumm-identities", check_gumm_identities(algebra, system))
    return EXIT_OK if passed else EXIT_NEGATIVE


_CHECKS = {
    "perm": ("permutable", check_permutable),
    "mod": ("modular", check_modular),
    "dist": ("distributive", check_distributive),
}


def cmd_con(args):
    algebra = resolve_algebra(args.algebra)
    lattice = congruence_lattice(algebra, max_congruences=args.max_congruences)
    _emit("algebra", algebra.name)
    _emit("congruences", len(lattice))
    for i, theta in enumerate(lattice):
        _emit(f"congruence {i}", theta)
    if not args.no_oracle:
        if algebra.size <= ORACLE_MAX_SIZE:
            if all_congruences_bruteforce(algebra) != set(lattice):
                raise CommandError("congruence lattice disagrees with the brute force oracle")
            _emit("oracle", "agree")
        else:
            warnings.warn(
                f"skipping the oracle, algebra {algebra.name} has more than {ORACLE_MAX_SIZE} elements"
            )
    selected = list(_CHECKS) if args.check == "all" else [args.check]
    passed = True
    for key in selected:
        name, check = _CHECKS[key]
        verdict = check(lattice)
        _emit(name, _word(verdict.passed))
        if not verdict:
            _emit(f"{name}-witness", verdict.describe())
            passed = False
    return EXIT_OK if passed else EXIT_NEGATIVE


def cmd_gallery(args):
    if args.list or args.name is None:
        for name in gallery_names():
            print(name)
        return EXIT_OK
    sys.stdout.write(dumps(get_algebra(args.name)))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="exactmaj",
        description="Exact-m-majority terms, subpower search and congruence lattices of finite algebras",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def _algebra_argument(p):
        p.add_argument("algebra", help="algebra file or gallery name, e.g. z_mod:2")

    def _arity_arguments(p):
        p.add_argument("--n", type=int, required=True, help="arity of the term")
        p.add_argument("--m", type=int, required=True, help="majority count")

    find = commands.add_parser("find", help="search an exact-m-majority term")
    _algebra_argument(find)
    _arity_arguments(find)
    find.add_argument("--witness", action="store_true", help="print and recheck the term")
    find.add_argument(
        "--max-closure",
        type=int,
        default=DEFAULT_MAX_CLOSURE,
        help=f"closure size cap (default {DEFAULT_MAX_CLOSURE})",
    )
    find.add_argument(
        "--max-work",
        type=int,
        default=DEFAULT_MAX_WORK,
        help=f"argument combinations allowed per closure round (default {DEFAULT_MAX_WORK})",
    )
    find.add_argument(
        "--no-dedup", action="store_true", help="keep duplicate coordinates of the power"
    )
    find.add_argument(
        "--pattern",
        type=_parse_pattern,
        action="append",
        help="only demand the equations for this m-subset, e.g. 1,2 (repeatable)",
    )
    find.set_defaults(handler=cmd_find)

    verify = commands.add_parser("verify", help="check a term exhaustively")
    _algebra_argument(verify)
    verify.add_argument("--term", required=True, help="s-expression, e.g. (+ x1 x2)")
    _arity_arguments(verify)
    verify.add_argument(
        "--nonexact", action="store_true", help="check the non-exact m-majority condition"
    )
    verify.set_defaults(handler=cmd_verify)

    derive = commands.add_parser("derive", help="derive terms from an exact-m-majority term")
    _algebra_argument(derive)
    derive.add_argument("--term", required=True, help="the exact-m-majority term u")
    _arity_arguments(derive)
    derive.add_argument(
        "--rule",
        type=_parse_rule,
        required=True,
        help="maltsev, collapse=K, nu, nu-nonexact or gumm",
    )
    derive.set_defaults(handler=cmd_derive)

    con = commands.add_parser("con", help="congruence lattice and its properties")
    _algebra_argument(con)
    con.add_argument(
        "--check", choices=["perm", "mod", "dist", "all"], default="all", help="default: all"
    )
    con.add_argument("--no-oracle", action="store_true", help="skip the brute force comparison")
    con.add_argument(
        "--max-congruences",
        type=int,
        default=DEFAULT_MAX_CONGRUENCES,
        help=f"lattice size cap (default {DEFAULT_MAX_CONGRUENCES})",
    )
    con.set_defaults(handler=cmd_con)

    gallery = commands.add_parser("gallery", help="write a gallery algebra as an algebra file")
    gallery.add_argument("name", nargs="?", help="gallery name, e.g. chain:3")
    gallery.add_argument("--list", action="store_true", help="list example gallery names")
    gallery.set_defaults(handler=cmd_gallery)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except (CommandError, ValueError, KeyError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
