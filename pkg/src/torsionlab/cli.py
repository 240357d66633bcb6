"""Command line frontend: script execution, harness, example replication.

Subcommands:
    run <file>           execute a script
    harness              run the seeded proposition harness
    examples             list or replicate the shipped example families

Exit codes: 0 all claims hold, 1 a claim failed or a violation was found,
2 usage, parse, or script errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import reports
from .dsl import (
    CheckStatement,
    FamilyStatement,
    IdealStatement,
    NameRef,
    QueryStatement,
    RingStatement,
    RunExampleStatement,
    expand_element,
    expand_ideal,
    expand_ring,
    parse,
)
from .errors import ParseError, TorsionlabError
from .families import (
    DEFAULT_LEVELS,
    DEFAULT_WINDOW,
    family_tags,
    get_family,
    replicate_example,
)
from .harness import DEFAULT_INSTANCES, DEFAULT_SEED, proposition_harness
from .ideals import (
    IdealHandle,
    format_ideal,
    ideal_colon,
    ideal_colon_ideal,
    ideal_membership,
    ideal_radical,
    ideal_saturation,
    minimal_primes,
)
from .spectrum import assassins_cyclic, format_prime, weak_assassins_cyclic
from .torsion import (
    DEFAULT_ITERATION_CAP,
    fairness_report,
    gamma_large_cyclic,
    gamma_small_cyclic,
)


@dataclass
class ExecutionOptions:
    fmt: str = "text"
    max_degree: Optional[int] = None
    max_iter: int = DEFAULT_ITERATION_CAP
    stability_window: int = DEFAULT_WINDOW
    seed: int = DEFAULT_SEED


class ScriptError(TorsionlabError):
    """Semantic error during script execution, with statement index."""

    def __init__(self, index, statement, message):
        super().__init__("statement %d (%s): %s"
                         % (index + 1, statement.render().strip(), message))
        self.index = index


class _Session:
    def __init__(self, options):
        self.options = options
        self.rings = {}
        self.ideals = {}  # name -> (ring name, IdealHandle)
        self.current_ring = None
        self.schedules = {}  # family tag -> (levels tuple, window)
        self.failed = False

    def ideal_named(self, name):
        if name not in self.ideals:
            raise TorsionlabError("undefined ideal %r" % name)
        return self.ideals[name]

    def resolve_ideal(self, argument):
        if isinstance(argument, NameRef):
            return self.ideal_named(argument.name)[1]
        raise TorsionlabError("expected an ideal name")

    def ring_for_elements(self):
        if self.current_ring is None:
            raise TorsionlabError("no ring defined yet")
        return self.rings[self.current_ring]

    def resolve_element(self, argument):
        if isinstance(argument, NameRef):
            raise TorsionlabError(
                "expected an element, got the name %r" % argument.name)
        return expand_element(argument, self.ring_for_elements())

    def same_ring(self, *names):
        rings = {self.ideal_named(n)[0] for n in names}
        if len(rings) > 1:
            raise TorsionlabError(
                "ideals %s live in different rings" % ", ".join(sorted(names)))


def _argument_name(argument):
    if isinstance(argument, NameRef):
        return argument.name
    raise TorsionlabError("expected an ideal name")


def _execute_query(session, stmt):
    options = session.options
    kind = stmt.kind
    bound = stmt.degree if stmt.degree is not None else options.max_degree
    if kind in ("gamma", "gammabar"):
        first, second = map(_argument_name, stmt.arguments)
        session.same_ring(first, second)
        acting = session.ideal_named(first)[1]
        relations = session.ideal_named(second)[1]
        run = gamma_small_cyclic if kind == "gamma" else gamma_large_cyclic
        return reports.torsion_tree(run(acting, relations, options.max_iter))
    if kind == "colon":
        ideal = session.resolve_ideal(stmt.arguments[0])
        second = stmt.arguments[1]
        if isinstance(second, NameRef) and second.name in session.ideals:
            session.same_ring(_argument_name(stmt.arguments[0]), second.name)
            result = ideal_colon_ideal(ideal, session.ideal_named(
                second.name)[1], bound)
        else:
            result = ideal_colon(ideal, expand_element(second, ideal.ring),
                                 bound)
        return {"ideal": format_ideal(result), "complete": result.complete}
    if kind == "saturation":
        first, second = map(_argument_name, stmt.arguments)
        session.same_ring(first, second)
        result = ideal_saturation(session.ideal_named(first)[1],
                                  session.ideal_named(second)[1],
                                  options.max_iter)
        return reports.saturation_tree(result)
    if kind == "membership":
        ideal = session.resolve_ideal(stmt.arguments[1])
        element = expand_element(stmt.arguments[0], ideal.ring)
        return reports.membership_tree(
            ideal_membership(element, ideal, bound))
    if kind == "radical":
        result = ideal_radical(session.resolve_ideal(stmt.arguments[0]))
        return {"ideal": format_ideal(result)}
    if kind == "minprimes":
        primes = minimal_primes(session.resolve_ideal(stmt.arguments[0]))
        return {"primes": [format_prime(p) for p in primes]}
    if kind in ("ass", "assf"):
        ideal = session.resolve_ideal(stmt.arguments[0])
        scan = assassins_cyclic if kind == "ass" else weak_assassins_cyclic
        return reports.assassin_tree(scan(ideal, bound))
    raise TorsionlabError("unhandled query kind %r" % kind)


def _execute_statement(session, stmt):
    options = session.options
    if isinstance(stmt, RingStatement):
        ring = expand_ring(stmt)
        session.rings[stmt.name] = ring
        session.current_ring = stmt.name
        return {"ring": stmt.name, "variables": ring.num_vars,
                "rules": len(ring.rules)}
    if isinstance(stmt, IdealStatement):
        if session.current_ring is None:
            raise TorsionlabError("ideal %r defined before any ring"
                                  % stmt.name)
        ring = session.rings[session.current_ring]
        handle = expand_ideal(stmt, ring)
        session.ideals[stmt.name] = (session.current_ring, handle)
        return {"ideal": stmt.name, "value": format_ideal(handle)}
    if isinstance(stmt, QueryStatement):
        return _execute_query(session, stmt)
    if isinstance(stmt, CheckStatement):
        session.same_ring(stmt.acting, stmt.relations)
        acting = session.ideal_named(stmt.acting)[1]
        relations = session.ideal_named(stmt.relations)[1]
        bound = (stmt.degree if stmt.degree is not None
                 else session.options.max_degree)
        report = fairness_report(acting, relations, bound, options.max_iter)
        if not report.all_hold:
            session.failed = True
        return reports.fairness_tree(report)
    if isinstance(stmt, FamilyStatement):
        get_family(stmt.tag)
        if stmt.window < 2:
            raise TorsionlabError("window must be at least 2")
        if stmt.low > stmt.high:
            raise TorsionlabError("empty level schedule")
        levels = tuple(range(stmt.low, stmt.high + 1))
        session.schedules[stmt.tag] = (levels, stmt.window)
        return {"family": stmt.tag, "levels": list(levels),
                "window": stmt.window}
    if isinstance(stmt, RunExampleStatement):
        levels, window = session.schedules.get(
            stmt.tag, (DEFAULT_LEVELS, options.stability_window))
        try:
            report = replicate_example(stmt.tag, levels, window,
                                       options.seed)
        except ValueError as exc:
            raise TorsionlabError(str(exc))
        if not report.all_pass:
            session.failed = True
        return reports.example_tree(report)
    raise TorsionlabError("unhandled statement")


def execute(script, options=None):
    """Run a parsed script; returns (report tree, exit code)."""
    options = options or ExecutionOptions()
    session = _Session(options)
    results = []
    for index, stmt in enumerate(script.statements):
        try:
            payload = _execute_statement(session, stmt)
        except TorsionlabError as exc:
            results.append({"statement": stmt.render().strip(),
                            "error": str(exc)})
            tree = {"statements": results, "status": "error",
                    "error_at": index + 1}
            return tree, 2
        results.append({"statement": stmt.render().strip(),
                        "result": payload})
    status = "fail" if session.failed else "ok"
    return {"statements": results, "status": status}, (
        1 if session.failed else 0)


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _level_range(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("expected a..b")
    try:
        low, high = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a..b with integers")
    if low > high:
        raise argparse.ArgumentTypeError("empty range")
    return tuple(range(low, high + 1))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torsionlab",
        description="torsion submodules, assassins, and fairness checks "
                    "over truncated monomial-rewriting algebras")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format (text or json-like structured)")
    parser.add_argument("--max-degree", type=_positive_int, default=None,
                        help="default witness/search degree bound")
    parser.add_argument("--max-iter", type=_positive_int,
                        default=DEFAULT_ITERATION_CAP,
                        help="saturation chain iteration cap")
    parser.add_argument("--stability-window", type=_positive_int,
                        default=DEFAULT_WINDOW,
                        help="trailing window for stabilization checks")
    parser.add_argument("--seed", type=int, default=None,
                        help="random seed (default: TORSIONLAB_SEED or %d)"
                             % DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a script file")
    run.add_argument("file")

    harness = sub.add_parser("harness", help="run the proposition harness")
    harness.add_argument("--instances", type=_positive_int,
                         default=DEFAULT_INSTANCES)
    # SUPPRESS so the subparser does not clobber a seed parsed by the
    # global flag before the subcommand name.
    harness.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    examples = sub.add_parser("examples", help="replicate shipped examples")
    group = examples.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--run", metavar="TAG")
    examples.add_argument("--levels", type=_level_range, default=None,
                          metavar="A..B")
    examples.add_argument("--window", type=_positive_int, default=None)
    return parser


def _seed_from(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("TORSIONLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    options = ExecutionOptions(
        fmt=args.format,
        max_degree=args.max_degree,
        max_iter=args.max_iter,
        stability_window=args.stability_window,
        seed=_seed_from(args))

    if args.command == "run":
        try:
            with open(args.file, "r", encoding="utf-8") as handle:
                source = handle.read()
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        try:
            script = parse(source)
        except ParseError as exc:
            detail = exc.message
            if exc.expected:
                detail += " (expected: %s)" % ", ".join(exc.expected)
            print("parse error at line %d column %d: %s"
                  % (exc.line, exc.column, detail), file=sys.stderr)
            return 2
        tree, code = execute(script, options)
        sys.stdout.write(reports.render(tree, options.fmt))
        return code

    if args.command == "harness":
        report = proposition_harness(args.instances, options.seed)
        sys.stdout.write(reports.render(reports.harness_tree(report),
                                        options.fmt))
        return 0 if report.ok else 1

    if args.command == "examples":
        if args.list:
            tree = {"examples": [
                {"tag": tag, "description": get_family(tag).description}
                for tag in family_tags()]}
            sys.stdout.write(reports.render(tree, options.fmt))
            return 0
        tag = args.run
        try:
            get_family(tag)
        except TorsionlabError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        levels = args.levels if args.levels is not None else DEFAULT_LEVELS
        window = (args.window if args.window is not None
                  else options.stability_window)
        try:
            report = replicate_example(tag, levels, window, options.seed)
        except (TorsionlabError, ValueError) as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        sys.stdout.write(reports.render(reports.example_tree(report),
                                        options.fmt))
        return 0 if report.all_pass else 1

    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
