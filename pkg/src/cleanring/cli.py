"""``cleanring`` command line: build rings, classify elements, run constructions and checks.

Exit codes: 0 ok / holds, 1 refuted or verification failure, 2 usage or parse
error, 3 resource limit or precondition failure.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
import time
from contextlib import contextmanager
from typing import Callable

from . import constructive as cx
from .classify import ALL_PROPERTIES, Classifier, Property, classify_ring
from .errors import (
    BudgetExceededError,
    ElementLiteralError,
    OrderCapError,
    PostconditionError,
    PreconditionError,
    RingMismatchError,
    RingSpecSyntaxError,
)
from .harness import CASE_IDS, FAMILIES, sweep
from .ring import Element, Ring, get_ring
from .spec import DEFAULT_MAX_ORDER, MatrixRing, check_order, parse_ring_spec

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _cap(args) -> int | None:
    return None if args.max_order <= 0 else args.max_order


def _ring(args, text: str | None = None) -> Ring:
    return get_ring(text or args.spec, _cap(args))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# -- subcommands -----------------------------------------------------------------


def cmd_info(args) -> int:
    ring = _ring(args)
    summary = ring.structure.summary()
    lines = [f"{k}: {v}" for k, v in summary.items()]
    _emit(args, summary, "\n".join(lines))
    return EXIT_OK


def _parse_property(name: str) -> Property:
    try:
        return Property(name)
    except ValueError:
        raise UsageError(f"unknown property {name!r}; choose from {', '.join(p.value for p in Property)}")


def cmd_classify(args) -> int:
    ring = _ring(args)
    props = [_parse_property(args.property)] if args.property else list(ALL_PROPERTIES)
    if args.element is None:
        report = classify_ring(ring, props, deadline=args.deadline)
        lines = [f"ring {ring} (order {ring.order})"]
        for p, o in report.outcomes.items():
            status = "holds" if o.holds else f"fails at {o.counterexample}"
            lines.append(f"  {p.value:<24} {status}")
        _emit(args, report.to_json(), "\n".join(lines))
        refuted = args.property and not report.holds(props[0])
        return EXIT_REFUTED if refuted else EXIT_OK
    a = ring.parse_element(args.element)
    clf = Classifier(ring)
    results = {}
    lines = [f"element {a} of {ring}"]
    for p in props:
        w = clf.witness(p, a.index)
        ok = clf.holds(p, a.index)
        results[p.value] = {"holds": ok, "witness": None if w is None else w.to_json()}
        if ok:
            lines.append(f"  {p.value:<24} holds: e = {w.idempotent}, complement {w.complement}")
        elif w is not None:
            lines.append(f"  {p.value:<24} refuted: {w.witness_count} admissible idempotents")
        else:
            lines.append(f"  {p.value:<24} refuted: no admissible idempotent")
    payload = {"ring": str(ring), "element": str(a), "element_index": a.index, "properties": results}
    _emit(args, payload, "\n".join(lines))
    if args.property and not results[props[0].value]["holds"]:
        return EXIT_REFUTED
    return EXIT_OK


def _decompose_ring(args) -> Ring:
    # the decomposition never enumerates M_n(S), so only the base ring is bounded
    spec = parse_ring_spec(args.spec, None)
    bounded = spec.base if isinstance(spec, MatrixRing) else spec
    check_order(bounded, _cap(args))
    return get_ring(spec, None)


def cmd_decompose(args) -> int:
    ring = _decompose_ring(args)
    A = ring.parse_element(args.matrix)
    d = cx.thm26_decompose(A)
    text = "\n".join(
        [f"2A = U + V for A = {d.A}", f"U = {d.U}", f"V = {d.V}", f"U^-1 = {d.U_inv}", f"V^-1 = {d.V_inv}", f"verified: {d.verify()}"]
    )
    _emit(args, d.to_json(), text)
    return EXIT_OK


def cmd_sylvester(args) -> int:
    ring = _ring(args)
    a, b, v = (ring.parse_element(x) for x in (args.a, args.b, args.v))
    sol = cx.thm34_sylvester(a, b, v)
    payload = sol.to_json()
    text = f"solutions of a x - x b = v: {payload['solutions']} (unique: {sol.unique})"
    _emit(args, payload, text)
    return EXIT_OK if sol.unique else EXIT_REFUTED


def cmd_lift(args) -> int:
    ring = _ring(args)
    A = ring.parse_element(args.matrix)
    E = cx.thm411_lift(A)
    payload = {"ring": str(ring), "A": str(A), "E": str(E), "E_index": E.index}
    _emit(args, payload, f"idempotent lift E = {E}")
    return EXIT_OK


def cmd_roots(args) -> int:
    ring = _ring(args)
    A = ring.parse_element(args.matrix)
    rc = cx.thm414_root_criterion(A)
    payload = rc.to_json()
    lines = [f"trace {rc.trace}, det {rc.det}, kind {rc.kind}", f"roots: {[str(r) for r in rc.roots]}", f"criterion holds: {rc.holds}"]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rc.holds else EXIT_REFUTED


def cmd_similar(args) -> int:
    ring = _ring(args)
    A = ring.parse_element(args.matrix)
    U = cx.similarity_to_diagonal(A, max_order=_cap(args) or ring.order)
    if U is None:
        _emit(args, {"ring": str(ring), "A": str(A), "U": None, "D": None}, f"{A} is not similar to a diagonal matrix")
        return EXIT_REFUTED
    D = U * A * U.inverse()
    payload = {"ring": str(ring), "A": str(A), "U": str(U), "D": str(D)}
    _emit(args, payload, f"U A U^-1 = {D} with U = {U}")
    return EXIT_OK


def _family_rings(args) -> list[str]:
    rings = list(args.specs)
    if args.family:
        if args.family not in FAMILIES:
            raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
        rings += list(FAMILIES[args.family])
    if not rings:
        raise UsageError("give at least one ring spec or --family")
    return rings


def cmd_verify(args) -> int:
    if args.case != "all" and args.case not in CASE_IDS:
        raise UsageError(f"unknown case id {args.case!r}")
    rings = _family_rings(args)
    for r in rings:
        parse_ring_spec(r, None)
    cases = "all" if args.case == "all" else [args.case]
    report = sweep(cases, rings, max_order=_cap(args), threads=args.threads, seed=args.seed, deadline=args.deadline)
    _emit(args, report.to_json(timings=args.timings), report.table())
    return report.exit_status


def cmd_scan(args) -> int:
    rings = _family_rings(args)
    props = [_parse_property(args.property)] if args.property else list(ALL_PROPERTIES)
    rows = []
    for text in rings:
        ring = _ring(args, text)
        report = classify_ring(ring, props, deadline=args.deadline)
        rows.append(report)
    header = "ring".ljust(14) + " ".join(p.value for p in props)
    lines = [header]
    for rep in rows:
        cells = " ".join(("yes" if rep.holds(p) else "no").ljust(len(p.value)) for p in props)
        lines.append(f"{str(rep.ring):<14}{cells}".rstrip())
    payload = {"rings": [r.to_json() for r in rows]}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="ring order cap (<= 0 disables)")
    common.add_argument("--budget-ms", type=int, default=None, help="wall-clock budget in milliseconds")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--timings", action="store_true", help="include timings in JSON output")

    parser = argparse.ArgumentParser(prog="cleanring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("info", cmd_info, "ring summary")
    p.add_argument("spec")
    p = add("classify", cmd_classify, "classify an element or a whole ring")
    p.add_argument("spec")
    p.add_argument("element", nargs="?")
    p.add_argument("--property")
    p = add("decompose", cmd_decompose, "write 2A as a sum of two units")
    p.add_argument("spec")
    p.add_argument("matrix")
    p = add("sylvester", cmd_sylvester, "solve a x - x b = v")
    for name in ("spec", "a", "b", "v"):
        p.add_argument(name)
    for name, fn, help in (
        ("lift", cmd_lift, "idempotent lift for a triangular matrix"),
        ("roots", cmd_roots, "characteristic-root criterion for a 2x2 matrix"),
        ("similar", cmd_similar, "similarity to a diagonal matrix"),
    ):
        p = add(name, fn, help)
        p.add_argument("spec")
        p.add_argument("matrix")
    p = add("verify", cmd_verify, "run theorem cases")
    p.add_argument("case", help="case id or 'all'")
    p.add_argument("specs", nargs="*")
    p.add_argument("--family")
    p = add("scan", cmd_scan, "tabulate ring-level properties over rings")
    p.add_argument("specs", nargs="*")
    p.add_argument("--family")
    p.add_argument("--property")
    return parser


@contextmanager
def _budget(ms: int | None):
    if not ms or not hasattr(signal, "setitimer"):
        yield
        return

    def expire(signum, frame):
        raise BudgetExceededError(f"time budget of {ms} ms exceeded")

    previous = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, ms / 1000)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.deadline = None if args.budget_ms is None else time.monotonic() + args.budget_ms / 1000
    try:
        with _budget(args.budget_ms):
            return args.func(args)
    except (RingSpecSyntaxError, ElementLiteralError, RingMismatchError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OrderCapError, PreconditionError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PostconditionError as exc:
        print(f"self-check failed: {exc}", file=sys.stderr)
        return EXIT_REFUTED


if __name__ == "__main__":
    sys.exit(main())
