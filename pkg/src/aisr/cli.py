"""Command-line front end.

Exit codes: 0 success or verified, 1 semantic failure (a check fails, a
claim is refuted), 2 usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import catalog
from .algebra import (
    AlgebraError,
    BudgetExceeded,
    FiniteAiSemiring,
    NonCommutativeError,
    assignment_budget,
    enumerate_ai_semirings,
    satisfies,
    validate,
)
from .characterize import DECIDERS, explain
from .families import BASIS_TAGS, basis, is_label, named
from .freeness import DEFAULT_CAP, SearchBoundExceeded, instance_subterm
from .graph import bipartition, build, components, has_odd_cycle, odd_closure, odd_cycle
from .proof import StepError, check_leq_chain, check_proof, script_from_json, script_to_json, search_derivation
from .terms import Inequality, ParseError, Statement, TermError, format_term, parse_statement, parse_term, var_key

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_algebra(source: str) -> FiniteAiSemiring:
    """A catalog name, or a path to a JSON algebra file."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from None
        try:
            return FiniteAiSemiring.from_json(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{source}: {exc}") from None
    try:
        return catalog.by_name(source)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0]) if exc.args else str(exc)) from None


def load_statement(text: str) -> Statement:
    if is_label(text):
        return named(text)
    return parse_statement(text)


def _out(line: str = "") -> None:
    print(line)


# -- subcommands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    A = load_algebra(args.algebra)
    found = validate(A)
    _out(f"{A.name or args.algebra}: size {A.size}")
    if not found:
        _out("valid commutative ai-semiring")
        return OK
    for v in found:
        _out(f"violation: {v.describe(A)}")
    return FAIL


def cmd_check(args) -> int:
    A = load_algebra(args.algebra)
    stmt = load_statement(args.statement)
    budget = args.budget if args.budget is not None else assignment_budget()
    verdict = satisfies(A, stmt, budget=budget)
    _out(f"{A.name} |= {stmt}")
    if verdict.holds:
        _out(f"holds ({verdict.checked} assignments)")
        return OK
    _out(f"fails: {verdict.describe(A)}")
    return FAIL


def cmd_decide(args) -> int:
    stmt = load_statement(args.statement)
    rows = explain(args.variety, stmt)
    for ineq, ok, reason in rows:
        tail = f" [{reason}]" if reason else ""
        _out(f"{'holds' if ok else 'fails'}: {ineq}{tail}")
    verdict = all(ok for _, ok, _ in rows)
    _out(f"{args.variety}: {'holds' if verdict else 'fails'}")
    return OK if verdict else FAIL


def cmd_free(args) -> int:
    v, u = parse_term(args.target), parse_term(args.pattern)
    wit = instance_subterm(u, v, args.cap)
    if wit is None:
        _out(f"FREE: {format_term(v)} has no instance of {format_term(u)} as a subterm")
        return OK
    _out(f"NOT FREE: {format_term(v)} = p*phi({format_term(u)}) + r")
    _out(wit.describe(u))
    return FAIL


def cmd_graph(args) -> int:
    t = parse_term(args.term)
    G = build(t)
    _out("vertices: " + " ".join(G.sorted_vertices()))
    _out("edges: " + ", ".join("-".join(e) if len(e) == 2 else f"{e[0]} (loop)" for e in G.sorted_edges()))
    _out("components: " + " | ".join(" ".join(sorted(c, key=var_key)) for c in components(G)))
    if has_odd_cycle(G):
        _out("odd cycle: " + " ".join(odd_cycle(G)))
    else:
        colour = bipartition(G)
        sides = [sorted((x for x, c in colour.items() if c == k), key=var_key) for k in (0, 1)]
        _out(f"bipartition: {{{', '.join(sides[0])}}} / {{{', '.join(sides[1])}}}")
    pairs = sorted((tuple(sorted(p, key=var_key)) for p in odd_closure(G)), key=lambda p: [var_key(x) for x in p])
    _out("odd closure: " + ", ".join("*".join(p) if len(p) == 2 else f"{p[0]}^2" for p in pairs))
    return OK


def cmd_prove(args) -> int:
    if args.check:
        try:
            doc = json.loads(Path(args.check).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read {args.check}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.check}: invalid JSON ({exc})") from None
        script, goal = script_from_json(doc)
        if args.goal:
            goal = load_statement(args.goal)
        try:
            terms = script.replay()
        except StepError as exc:
            _out(f"invalid: {exc}")
            return FAIL
        for i, t in enumerate(terms):
            _out(f"  t{i} = {format_term(t)}")
        if goal is None:
            _out(f"replayed {len(script.steps)} steps (no goal given)")
            return OK
        ok = check_proof(script, goal)
        _out(f"{'proves' if ok else 'does not prove'}: {goal}")
        return OK if ok else FAIL

    if not args.statement or not args.basis:
        raise UsageError("prove --search and --certify need --basis and an inequality")
    goal = load_statement(args.statement)
    if not isinstance(goal, Inequality):
        raise UsageError("the goal must be an inequality q <= u")
    if args.certify:
        from .certify import NotCertifiable, certify

        try:
            chain = certify(args.basis, goal.lhs, goal.rhs, args.sigma_bound)
        except NotCertifiable as exc:
            _out(f"no certificate: {exc}")
            return FAIL
        ok = bool(check_leq_chain(chain)) and chain.proves(goal)
        _out(f"case: {chain.note}")
        for i, (t, just) in enumerate(chain.links):
            how = "" if just is None else f"   [{_describe_link(just)}]"
            _out(f"  {'  ' if i == 0 else '>= '}{format_term(t)}{how}")
        _out(f"{'checked' if ok else 'FAILED'}: {goal}")
        return OK if ok else FAIL

    B = basis(args.basis, args.sigma_bound)
    script = search_derivation(B, goal, args.depth, args.size_bound)
    if script is None:
        _out(f"no derivation within depth {args.depth} (this does not show underivability)")
        return FAIL
    _out(f"found a {len(script.steps)}-step derivation of {goal}")
    for i, t in enumerate(script.replay()):
        _out(f"  t{i} = {format_term(t)}")
    if args.output:
        Path(args.output).write_text(json.dumps(script_to_json(script, goal), indent=2) + "\n", encoding="utf-8")
        _out(f"wrote {args.output}")
    return OK


def _describe_link(just) -> str:
    from .proof import Apply, Drop, Rewrite, Same

    if isinstance(just, Drop):
        return "drop summands"
    if isinstance(just, Same):
        return "equal"
    if isinstance(just, Rewrite):
        return f"{just.step.rule} {just.step.direction}"
    if isinstance(just, Apply):
        return f"{just.rule}"
    return type(just).__name__


def cmd_enumerate(args) -> int:
    algs = enumerate_ai_semirings(args.order, cap=args.cap)
    if args.json:
        print(json.dumps([A.to_json() for A in algs], indent=1))
        return OK
    _out(f"{len(algs)} commutative ai-semirings of order {args.order} up to isomorphism")
    for i, A in enumerate(algs):
        _out(f"#{i + 1}  add={A.add.tolist()}  mul={A.mul.tolist()}")
    return OK


def cmd_reproduce(args) -> int:
    from .reproduce import CLAIM_IDS, Options, run

    if args.list:
        for c in CLAIM_IDS:
            _out(c)
        return OK
    if not args.all and not args.claim:
        raise UsageError("reproduce needs --all or at least one --claim")
    opt = Options(
        sigma_max=args.sigma_max,
        m_max=args.m_max,
        triples=args.triples,
        seed=args.seed,
        certificate_stride=args.stride,
        budget=args.budget,
    )
    try:
        report = run(None if args.all else args.claim, opt, args.jobs)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        _out(report.to_text())
    if args.output:
        Path(args.output).write_text(json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8")
    return FAIL if report.refuted else OK


# -- parser ----------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aisr", description="Finite ai-semirings, identities and derivations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the ai-semiring axioms")
    s.add_argument("algebra", help="catalog name (SR6, D2, Sc:ab, Sc:ab0, ...) or JSON file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", help="exhaustively check an identity or inequality")
    s.add_argument("algebra")
    s.add_argument("statement", help='e.g. "x^3 = x^2", "x1 <= x2*x3*x4" or a label such as sigma:3')
    s.add_argument("--budget", type=_positive, help="maximum number of assignments (default $AISR_BUDGET or 1e8)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("decide", help="decide a statement syntactically")
    s.add_argument("--variety", required=True, choices=sorted(DECIDERS))
    s.add_argument("statement")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("free", help="is the target free of instances of the pattern?")
    s.add_argument("--target", required=True, help="the term v")
    s.add_argument("--pattern", required=True, help="the term u")
    s.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("graph", help="the graph of the length-2 layer of a term")
    s.add_argument("term")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("prove", help="check, search for, or certify derivations")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", metavar="FILE", help="replay a JSON proof script")
    mode.add_argument("--search", action="store_true", help="bounded breadth-first search")
    mode.add_argument("--certify", action="store_true", help="build a chain by case analysis")
    s.add_argument("statement", nargs="?")
    s.add_argument("--basis", choices=BASIS_TAGS)
    s.add_argument("--goal", help="override the goal stored in the script")
    s.add_argument("--depth", type=_positive, default=4)
    s.add_argument("--size-bound", type=_positive)
    s.add_argument("--sigma-bound", type=_positive, default=4)
    s.add_argument("--output", help="write the found script as JSON")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("enumerate", help="list small commutative ai-semirings")
    s.add_argument("order", type=_positive)
    s.add_argument("--cap", type=_positive, default=3)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("reproduce", help="re-verify the registered claims")
    s.add_argument("--all", action="store_true")
    s.add_argument("--claim", action="append", default=[])
    s.add_argument("--list", action="store_true", help="list claim ids")
    s.add_argument("--sigma-max", type=_positive, default=3)
    s.add_argument("--m-max", type=_positive, default=4)
    s.add_argument("--triples", type=_positive, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stride", type=_positive, default=10, help="corpus stride for the certificates claim")
    s.add_argument("--budget", type=_positive)
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--output", help="also write the JSON report here")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (TermError, KeyError, ValueError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
    except (NonCommutativeError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except SearchBoundExceeded as exc:
        print(f"gave up: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
