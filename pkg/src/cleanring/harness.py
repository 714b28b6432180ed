"""Executable re-verification of the structural theorems on finite rings.

Each :class:`TheoremCase` pairs an applicability predicate with a check that
evaluates *both* sides of an equivalence (or both ends of an implication) by
exhaustive search, plus the explicit constructions where one exists.  A case
whose predicate fails on a ring is reported as ``skipped`` with the predicate
text, never as a pass.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import constructive as cx
from .classify import Classifier, Property
from .errors import BudgetExceededError, PostconditionError, PreconditionError
from .ring import Element, Ring, get_ring
from .spec import DEFAULT_MAX_ORDER, MatrixRing, TriangularRing, Zmod

PC = Property.PERFECTLY_CLEAN
SC = Property.STRONGLY_CLEAN
QP = Property.QUASIPOLAR
SJC = Property.STRONGLY_J_CLEAN
PJC = Property.PERFECTLY_J_CLEAN
JQP = Property.J_QUASIPOLAR
SNC = Property.STRONGLY_NIL_CLEAN
USC = Property.UNIQUELY_STRONGLY_CLEAN
UC = Property.UNIQUELY_CLEAN

DEFAULT_SWEEP = tuple(f"Z{n}" for n in range(2, 17)) + (
    "Z2xZ3",
    "M2(Z2)",
    "M2(Z4)",
    "T2(Z2)",
    "T2(Z4)",
    "T3(Z2)",
    "T2(T2(Z2))",
)

FAMILIES = {
    "sweep-default": DEFAULT_SWEEP,
    "zn": tuple(f"Z{n}" for n in range(2, 17)),
    "local-bases": ("Z2", "Z4", "Z8", "Z9"),
    "triangular": ("T2(Z2)", "T2(Z4)", "T2(Z8)", "T2(Z9)", "T3(Z2)", "T2(T2(Z2))"),
    "matrix": ("M2(Z2)", "M2(Z3)", "M2(Z4)"),
}

CONJUGATION_SAMPLES = 100
EXHAUSTIVE_LIMIT = 10_000
RANDOM_SAMPLES = 50
TRIANGULAR_TOWER_MAX_ORDER = 512


@dataclass
class CheckResult:
    passed: bool
    counterexamples: list[Element] = field(default_factory=list)
    details: dict = field(default_factory=dict)


class CaseContext:
    """What a check procedure sees: the ring, its classifier and memoised ring flags."""

    def __init__(self, ring: Ring, classifier: Classifier, seed: int = 0):
        self.ring = ring
        self.c = classifier
        self.s = ring.structure
        self.seed = seed
        self._flags: dict = {}

    def holds(self, prop: Property, a: int) -> bool:
        return self.c.holds(prop, int(a))

    def failure(self, prop: Property) -> int | None:
        key = ("fail", prop)
        if key not in self._flags:
            self._flags[key] = next(
                (a for a in range(self.ring.order) if not self.c.holds(prop, a)), None
            )
        return self._flags[key]

    def ring_holds(self, prop: Property) -> bool:
        return self.failure(prop) is None

    def el(self, i: int) -> Element:
        return Element(self.ring, int(i))


@dataclass(frozen=True)
class TheoremCase:
    id: str
    title: str
    applicability: str
    applies: Callable[[Ring], bool]
    check: Callable[[CaseContext], CheckResult]


@dataclass
class VerificationReport:
    case: str
    ring: str
    verdict: str
    elapsed_ms: float
    counterexamples: list[str] = field(default_factory=list)
    reason: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self, timings: bool = True) -> dict:
        out = {"case": self.case, "ring": self.ring, "verdict": self.verdict}
        if self.verdict == "fail":
            out["counterexample"] = self.counterexamples
        if self.reason is not None:
            out["reason"] = self.reason
        if self.details:
            out["details"] = self.details
        out["elapsed_ms"] = round(self.elapsed_ms, 3) if timings else 0
        return out


# -- shared helpers ----------------------------------------------------------------


def _all_pass(ctx: CaseContext, pred: Callable[[int], bool]) -> int | None:
    return next((a for a in range(ctx.ring.order) if not pred(a)), None)


def _equivalence(ctx: CaseContext, lhs: bool, rhs: bool, bad: int | None, **details) -> CheckResult:
    res = CheckResult(lhs == rhs, details={"lhs": lhs, "rhs": rhs, **details})
    if not res.passed and bad is not None:
        res.counterexamples.append(ctx.el(bad))
    return res


def _merge(*results: CheckResult) -> CheckResult:
    out = CheckResult(all(r.passed for r in results))
    for r in results:
        out.counterexamples += r.counterexamples
        out.details.update(r.details)
    return out


def _differs(ctx: CaseContext, p: Callable[[int], bool], q: Callable[[int], bool]) -> int | None:
    return _all_pass(ctx, lambda a: p(a) == q(a))


def _sample_elements(ctx: CaseContext, ring: Ring | None = None) -> Iterable[int]:
    ring = ring or ctx.ring
    if ring.order <= EXHAUSTIVE_LIMIT:
        return range(ring.order)
    rng = np.random.default_rng(ctx.seed)
    return [int(i) for i in rng.integers(0, ring.order, RANDOM_SAMPLES)]


def _constructs(fn: Callable[[], object]) -> bool:
    try:
        fn()
        return True
    except (PreconditionError, PostconditionError):
        return False


# -- applicability predicates --------------------------------------------------------


def _always(ring: Ring) -> bool:
    return True


def _matrix_ring(ring: Ring) -> bool:
    return isinstance(ring.spec, MatrixRing) and Classifier(ring.base).ring_holds(PC)


def _two_is_unit(ring: Ring) -> bool:
    return ring.from_int(2) in ring.structure.units


def _m2_over_local_nil(ring: Ring) -> bool:
    if not (isinstance(ring.spec, MatrixRing) and ring.k == 2):
        return False
    st = ring.base.structure
    return st.is_local and st.jacobson <= st.nilpotents


def _m2_over_comm_local(ring: Ring) -> bool:
    if not (isinstance(ring.spec, MatrixRing) and ring.k == 2):
        return False
    st = ring.base.structure
    return st.is_local and st.is_commutative


def _t2_over_local(ring: Ring) -> bool:
    return isinstance(ring.spec, TriangularRing) and ring.k == 2 and ring.base.structure.is_local


def _tn_over_comm_2_in_J(ring: Ring) -> bool:
    if not isinstance(ring.spec, TriangularRing):
        return False
    st = ring.base.structure
    return st.is_commutative and ring.base.from_int(2) in st.jacobson


def _commutative(ring: Ring) -> bool:
    return ring.structure.is_commutative


def _tower_over_2_power(ring: Ring) -> bool:
    spec = ring.spec
    if not (isinstance(spec, TriangularRing) and spec.k == 2):
        return False
    inner = spec.base
    if not (isinstance(inner, TriangularRing) and inner.k == 2 and isinstance(inner.base, Zmod)):
        return False
    n = inner.base.n
    return n >= 2 and n & (n - 1) == 0


def _is_z3(ring: Ring) -> bool:
    return ring.spec == Zmod(3)


# -- regular elements, idempotents, sums of units -----------------------------------


def _regular_exists(ctx: CaseContext, a: int) -> bool:
    """Brute force: some x in comm^2(a) with x = xax and 1 - x in (1-a)R and R(1-a)."""
    ring, s = ctx.ring, ctx.s
    xs = s.double_commutant(a).indices
    b = int(s.one_minus[a])
    right_ideal = np.zeros(ring.order, dtype=bool)
    right_ideal[ring.mul_row(b)] = True
    left_ideal = np.zeros(ring.order, dtype=bool)
    left_ideal[ring.mul_col(b)] = True
    ok = ring.mul(ring.mul(xs, a), xs) == xs
    rest = s.one_minus[xs]
    return bool((ok & right_ideal[rest] & left_ideal[rest]).any())


def check_T21(ctx: CaseContext) -> CheckResult:
    rhs_bad = _all_pass(ctx, lambda a: _regular_exists(ctx, a))

    def round_trip(a: int) -> bool:
        w = ctx.c.witness(PC, a)
        if w is None:
            return True

        def go():
            rw = cx.thm21_e_to_x(w.element, w.idempotent)
            e = cx.thm21_x_to_e(rw.a, rw.x, rw.s, rw.t)
            cx.thm21_e_to_x(rw.a, e)

        return _constructs(go)

    bad_trip = _all_pass(ctx, round_trip)
    res = _equivalence(
        ctx, ctx.ring_holds(PC), rhs_bad is None, rhs_bad if rhs_bad is not None else ctx.failure(PC)
    )
    if bad_trip is not None:
        res.passed = False
        res.counterexamples.append(ctx.el(bad_trip))
    res.details["round_trip_ok"] = bad_trip is None
    return res


def check_C22(ctx: CaseContext) -> CheckResult:
    ring, s = ctx.ring, ctx.s
    mismatch = None
    rhs_bad = None
    for a in range(ring.order):
        comm2 = s.double_commutant(a)
        found = False
        for e in s.idempotents.indices:
            if e not in comm2:
                continue
            corner_ok = cx.cor22_corner_check(ctx.el(a), ctx.el(e))
            found |= corner_ok
            if corner_ok != (ring.sub(a, ring.sub(ring.one, int(e))) in s.units) and mismatch is None:
                mismatch = a
        if not found and rhs_bad is None:
            rhs_bad = a
    res = _equivalence(ctx, ctx.ring_holds(PC), rhs_bad is None, rhs_bad)
    if mismatch is not None:
        res.passed = False
        res.counterexamples.append(ctx.el(mismatch))
    res.details["corner_matches_complement_witness"] = mismatch is None
    return res


def _nil_condition(ctx: CaseContext) -> bool:
    return ctx.s.nilpotents == ctx.s.one_minus_units


def check_T23(ctx: CaseContext) -> CheckResult:
    ring, s = ctx.ring, ctx.s
    lhs = ctx.ring_holds(SNC)
    rhs = ctx.ring_holds(PC) and _nil_condition(ctx)
    res = _equivalence(ctx, lhs, rhs, ctx.failure(SNC) if not lhs else ctx.failure(PC))
    pjc = ctx.ring_holds(PJC)

    def poly_ok(a: int) -> bool:
        if not ctx.holds(SNC, a):
            return True
        try:
            e = cx.thm23_eval(ctx.el(a))
        except (PreconditionError, PostconditionError):
            return False
        if pjc:
            found = ctx.c.candidates(SNC, a)
            return len(found) == 1 and int(found[0]) == e.index
        return True

    bad = _all_pass(ctx, poly_ok)
    if bad is not None:
        res.passed = False
        res.counterexamples.append(ctx.el(bad))
    res.details["polynomial_ok"] = bad is None
    return res


def check_C24(ctx: CaseContext) -> CheckResult:
    lhs = ctx.ring_holds(SNC)
    rhs = ctx.ring_holds(QP) and _nil_condition(ctx)
    return _equivalence(ctx, lhs, rhs, ctx.failure(SNC) if not lhs else ctx.failure(QP))


def check_L25(ctx: CaseContext) -> CheckResult:
    ring, s = ctx.ring, ctx.s

    def two_sided(a: int) -> bool:
        es = s.idempotents.indices
        es = es[s.double_commutant(a).mask[es]]
        units = s.units.mask
        return bool((units[ring.sub(a, es)] & units[ring.add(a, es)]).any())

    rhs_bad = _all_pass(ctx, two_sided)
    res = _equivalence(ctx, ctx.ring_holds(PC), rhs_bad is None, rhs_bad)
    bad = _all_pass(ctx, lambda a: _constructs(lambda: cx.lemma25_two_sided_witness(ctx.el(a))))
    if bad is not None:
        res.passed = False
        res.counterexamples.append(ctx.el(bad))
    return res


def check_T26(ctx: CaseContext) -> CheckResult:
    checked = 0
    for a in _sample_elements(ctx):
        checked += 1
        if not _constructs(lambda: cx.thm26_decompose(ctx.el(a))):
            return CheckResult(False, [ctx.el(a)], {"checked": checked})
    return CheckResult(True, details={"checked": checked})


def check_C27(ctx: CaseContext) -> CheckResult:
    ring, s = ctx.ring, ctx.s
    quasipolar = ctx.ring_holds(QP)
    units = s.units.indices

    def two_units(a: int) -> bool:
        return bool(s.units.mask[ring.sub(a, units)].any())

    half = s.inv(ring.from_int(2))

    def constructive(a: int) -> bool:
        try:
            d = cx.thm26_decompose(ctx.el(ring.mul(half, a)))
        except (PreconditionError, PostconditionError):
            return False
        return ring.add(d.U.index, d.V.index) == a

    bad = _all_pass(ctx, lambda a: two_units(a) and constructive(a))
    passed = (not quasipolar) or bad is None
    return CheckResult(
        passed,
        [] if passed else [ctx.el(bad)],
        {"quasipolar": quasipolar, "sum_of_two_units": bad is None},
    )


# -- 2x2 and triangular matrix rings ------------------------------------------------


def _conjugation_pairs(ctx: CaseContext) -> list[tuple[int, int]]:
    units = ctx.s.units.indices
    rng = np.random.default_rng(ctx.seed)
    us = rng.choice(units, CONJUGATION_SAMPLES)
    as_ = rng.integers(0, ctx.ring.order, CONJUGATION_SAMPLES)
    return [(int(u), int(a)) for u, a in zip(us, as_)]


def _conjugation(ctx: CaseContext, prop: Property, target: str) -> CheckResult:
    ring, s = ctx.ring, ctx.s
    for u, a in _conjugation_pairs(ctx):
        ui = s.inv(u)
        conj = lambda x: ring.mul(ring.mul(u, x), ui)
        b = conj(a)
        ok = ctx.holds(prop, a) == ctx.holds(prop, b)
        ok &= np.array_equal(
            np.sort(conj(s.double_commutant(a).indices)), s.double_commutant(b).indices
        )
        w = ctx.c.witness(prop, a)
        if w is not None:
            f = conj(w.idempotent.index)
            ok &= ring.mul(f, f) == f and f in s.double_commutant(b)
            ok &= ring.sub(b, f) in getattr(s, target)
        if not ok:
            return CheckResult(False, [ctx.el(a), ctx.el(u)], {"pairs": CONJUGATION_SAMPLES})
    return CheckResult(True, details={"pairs": CONJUGATION_SAMPLES})


def check_L31(ctx: CaseContext) -> CheckResult:
    return _conjugation(ctx, PC, "units")


def _trichotomy(ctx: CaseContext, a: int) -> bool:
    ring, s = ctx.ring, ctx.s
    if a in s.units or s.one_minus[a] in s.units:
        return True
    U = cx.similarity_to_diagonal(ctx.el(a), max_order=ring.order)
    return U is not None


def _m2_equivalence(ctx: CaseContext) -> CheckResult:
    tri_bad = _all_pass(ctx, lambda a: _trichotomy(ctx, a))
    pc, sc, tri = ctx.ring_holds(PC), ctx.ring_holds(SC), tri_bad is None
    res = CheckResult(pc == sc == tri, details={"perfectly_clean": pc, "strongly_clean": sc, "trichotomy": tri})
    if not res.passed:
        bad = next(x for x in (tri_bad, ctx.failure(PC), ctx.failure(SC)) if x is not None)
        res.counterexamples.append(ctx.el(bad))
    return res


def check_T32(ctx: CaseContext) -> CheckResult:
    return _m2_equivalence(ctx)


def check_C33(ctx: CaseContext) -> CheckResult:
    return _m2_equivalence(ctx)


def check_T34(ctx: CaseContext) -> CheckResult:
    ring = ctx.ring
    S = ring.base
    st = S.structure
    res = _equivalence(ctx, ctx.ring_holds(PC), cx.thm34_t2_criterion(ring), ctx.failure(PC))
    # an idempotent witness of [[a, -v], [0, b]] (a in 1 + J, b in J) is [[0, x], [0, 1]] with ax - xb = v
    for a in st.one_plus_jacobson.indices:
        for b in st.jacobson.indices:
            for v in range(S.order):
                A = ring.from_grid([[int(a), S.neg(v)], [0, int(b)]])
                w = ctx.c.witness(PC, A)
                ok = w is not None
                if ok:
                    (e11, x), (_, e22) = ring.grid(w.idempotent.index)
                    ok = e11 == S.zero and e22 == S.one
                    ok &= S.sub(S.mul(int(a), x), S.mul(x, int(b))) == v
                if not ok:
                    res.passed = False
                    res.counterexamples.append(ctx.el(A))
                    return res
    return res


def check_C36(ctx: CaseContext) -> CheckResult:
    uwb = ctx.ring.base.structure.is_uniquely_weakly_bleached
    return _equivalence(ctx, ctx.ring_holds(PC), uwb, ctx.failure(PC))


# -- J-clean variants ---------------------------------------------------------------


def check_T41(ctx: CaseContext) -> CheckResult:
    lhs = ctx.ring_holds(PJC)
    rhs = ctx.ring_holds(QP) and ctx.s.is_boolean_mod_J
    return _equivalence(ctx, lhs, rhs, ctx.failure(PJC))


def check_C42(ctx: CaseContext) -> CheckResult:
    one = ctx.ring_holds(PJC)
    two = ctx.ring_holds(PC) and ctx.s.is_boolean_mod_J
    three = ctx.ring_holds(QP) and ctx.ring_holds(SJC)
    res = CheckResult(one == two == three, details={"(1)": one, "(2)": two, "(3)": three})
    if not res.passed and ctx.failure(PJC) is not None:
        res.counterexamples.append(ctx.el(ctx.failure(PJC)))
    return res


def check_E43(ctx: CaseContext) -> CheckResult:
    ring = ctx.ring
    R = ring.base
    Z = R.base
    two_z = {Z.scale(2, x) for x in range(Z.order)}
    facts = {
        "J(Z_2^n) = 2 Z_2^n": set(Z.structure.jacobson.to_json()) == two_z,
        "R/J(R) Boolean": R.structure.is_boolean_mod_J,
        "T2(R) quasipolar": ctx.ring_holds(QP),
        "T2(R)/J Boolean": ctx.s.is_boolean_mod_J,
        "T2(R) perfectly J-clean": ctx.ring_holds(PJC),
    }
    bad = _all_pass(ctx, lambda a: ctx.c.count(PJC, a) == 1)
    facts["unique idempotent for every element"] = bad is None
    res = CheckResult(all(facts.values()), details=facts)
    if not res.passed:
        culprit = bad if bad is not None else ctx.failure(PJC)
        if culprit is not None:
            res.counterexamples.append(ctx.el(culprit))
    return res


def check_P44(ctx: CaseContext) -> CheckResult:
    lhs = ctx.ring_holds(PJC)
    rhs = ctx.ring_holds(PC) and ctx.ring_holds(USC)
    return _equivalence(ctx, lhs, rhs, ctx.failure(PJC) if not lhs else ctx.failure(USC))


def check_C45(ctx: CaseContext) -> CheckResult:
    lhs = ctx.ring_holds(UC)
    rhs = ctx.s.is_abelian and ctx.ring_holds(PJC)
    return _equivalence(ctx, lhs, rhs, ctx.failure(UC) if not lhs else ctx.failure(PJC))


def check_T46(ctx: CaseContext) -> CheckResult:
    unique_bad = _all_pass(ctx, lambda a: ctx.c.count(PJC, a) == 1)
    return _equivalence(ctx, ctx.ring_holds(PJC), unique_bad is None, unique_bad)


def check_C47(ctx: CaseContext) -> CheckResult:
    lhs = ctx.ring_holds(PJC)
    rhs = ctx.ring_holds(QP) and ctx.ring_holds(SJC)
    return _equivalence(ctx, lhs, rhs, ctx.failure(PJC))


def check_P48(ctx: CaseContext) -> CheckResult:
    lhs, rhs = ctx.ring_holds(PJC), ctx.ring_holds(JQP)
    return _equivalence(ctx, lhs, rhs, ctx.failure(PJC) if not lhs else ctx.failure(JQP))


def check_E49(ctx: CaseContext) -> CheckResult:
    ring, s = ctx.ring, ctx.s
    one, two = 1, 2
    w1 = ctx.c.witness(PJC, one)
    w2 = ctx.c.witness(JQP, two)
    facts = {
        "J(Z3) = {0}": s.jacobson.to_json() == [0],
        "1 perfectly J-clean via e=1": w1 is not None and w1.idempotent.index == 1,
        "1 not J-quasipolar": ctx.c.witness(JQP, one) is None,
        "1+0 and 1+1 not in J": ring.add(1, 0) not in s.jacobson and ring.add(1, 1) not in s.jacobson,
        "2 J-quasipolar via e=1": w2 is not None and w2.idempotent.index == 1,
        "2 not perfectly J-clean": ctx.c.witness(PJC, two) is None,
        "2-0 and 2-1 not in J": ring.sub(2, 0) not in s.jacobson and ring.sub(2, 1) not in s.jacobson,
    }
    res = CheckResult(all(facts.values()), details=facts)
    if not res.passed:
        res.counterexamples += [ctx.el(one), ctx.el(two)]
    return res


def check_L410(ctx: CaseContext) -> CheckResult:
    ring, s = ctx.ring, ctx.s

    def agrees(a: int) -> bool:
        rhs = ctx.holds(QP, a) and ring.sub(a, s.squares[a]) in s.jacobson
        return ctx.holds(PJC, a) == rhs

    bad = _all_pass(ctx, agrees)
    return CheckResult(bad is None, [] if bad is None else [ctx.el(bad)])


def check_T411(ctx: CaseContext) -> CheckResult:
    ring = ctx.ring
    S = ring.base
    base = Classifier(S)
    lifted = 0

    def agrees(a: int) -> bool:
        nonlocal lifted
        grid = ring.grid(a)
        diag = all(base.holds(PJC, grid[i][i]) for i in range(ring.k))
        if ctx.holds(PJC, a) != diag:
            return False
        if diag:
            try:
                E = cx.thm411_lift(ctx.el(a))
            except (PreconditionError, PostconditionError):
                return False
            lifted += 1
            return E.index == int(ctx.c.candidates(PJC, a)[0])
        return True

    bad = _all_pass(ctx, agrees)
    return CheckResult(bad is None, [] if bad is None else [ctx.el(bad)], {"lifted": lifted})


def check_C412(ctx: CaseContext) -> CheckResult:
    ring = ctx.ring
    sjc = ctx.ring_holds(SJC)
    towers = {}
    for n in (1, 2, 3):
        spec = TriangularRing(ring.spec, n)
        if spec.order > TRIANGULAR_TOWER_MAX_ORDER:
            break
        T = get_ring(spec, None)
        towers[f"T{n}"] = Classifier(T).ring_holds(PJC)
    passed = all(v == sjc for v in towers.values())
    return CheckResult(
        passed,
        [] if passed or ctx.failure(SJC) is None else [ctx.el(ctx.failure(SJC))],
        {"strongly_J_clean": sjc, "perfectly_J_clean_towers": towers},
    )


def check_L413(ctx: CaseContext) -> CheckResult:
    return _conjugation(ctx, PJC, "jacobson")


def check_T414(ctx: CaseContext) -> CheckResult:
    def agrees(a: int) -> bool:
        crit = cx.thm414_root_criterion(ctx.el(a)).holds
        return ctx.holds(PJC, a) == ctx.holds(SJC, a) == crit

    bad = _all_pass(ctx, agrees)
    return CheckResult(bad is None, [] if bad is None else [ctx.el(bad)])


def check_C415(ctx: CaseContext) -> CheckResult:
    s = ctx.s
    rhs_bad = _all_pass(
        ctx, lambda a: a in s.units or s.one_minus[a] in s.units or ctx.holds(PJC, a)
    )
    return _equivalence(ctx, ctx.ring_holds(PC), rhs_bad is None, rhs_bad)


CASES: dict[str, TheoremCase] = {
    c.id: c
    for c in [
        TheoremCase("T2.1", "perfectly clean iff regular x in comm^2(a) with 1-x in (1-a)R and R(1-a)", "any ring", _always, check_T21),
        TheoremCase("C2.2", "perfectly clean iff Peirce-corner unit conditions", "any ring", _always, check_C22),
        TheoremCase("T2.3", "strongly nil clean iff perfectly clean and N(R) = {x : 1-x in U}", "any ring", _always, check_T23),
        TheoremCase("C2.4", "strongly nil clean iff quasipolar and N(R) = {x : 1-x in U}", "any ring", _always, check_C24),
        TheoremCase("L2.5", "perfectly clean iff a-e and a+e both units for some e in comm^2(a)", "any ring", _always, check_L25),
        TheoremCase("T2.6", "2A = U + V with U, V invertible", "ring is a full matrix ring M_n(S) over a perfectly clean S", _matrix_ring, check_T26),
        TheoremCase("C2.7", "quasipolar with 1/2 implies every element is a sum of two units", "2 is a unit in R", _two_is_unit, check_C27),
        TheoremCase("L3.1", "perfect cleanness is invariant under unit conjugation", "any ring", _always, check_L31),
        TheoremCase("T3.2", "M_2 perfectly clean iff strongly clean iff GL / I-GL / diagonalisable", "ring is M_2(S) with S local and J(S) nil", _m2_over_local_nil, check_T32),
        TheoremCase("C3.3", "M_2 perfectly clean iff strongly clean iff GL / I-GL / diagonalisable, commutative base", "ring is M_2(S) with S commutative local", _m2_over_comm_local, check_C33),
        TheoremCase("T3.4", "T_2(S) perfectly clean iff ax - xb = v uniquely solvable", "ring is T_2(S) with S local", _t2_over_local, check_T34),
        TheoremCase("C3.6", "T_2(S) perfectly clean iff S uniquely weakly bleached", "ring is T_2(S) with S local", _t2_over_local, check_C36),
        TheoremCase("T4.1", "perfectly J-clean iff quasipolar and R/J(R) Boolean", "any ring", _always, check_T41),
        TheoremCase("C4.2", "perfectly J-clean iff perfectly clean + Boolean mod J iff quasipolar + strongly J-clean", "any ring", _always, check_C42),
        TheoremCase("E4.3", "T_2(T_2(Z_2^n)) is perfectly J-clean", "ring is T_2(T_2(Z_{2^n})), n >= 1", _tower_over_2_power, check_E43),
        TheoremCase("P4.4", "perfectly J-clean iff perfectly clean and uniquely strongly clean", "any ring", _always, check_P44),
        TheoremCase("C4.5", "uniquely clean iff abelian perfectly J-clean", "any ring", _always, check_C45),
        TheoremCase("T4.6", "perfectly J-clean iff the comm^2 idempotent is unique", "any ring", _always, check_T46),
        TheoremCase("C4.7", "perfectly J-clean iff quasipolar and strongly J-clean", "any ring", _always, check_C47),
        TheoremCase("P4.8", "perfectly J-clean iff J-quasipolar", "any ring", _always, check_P48),
        TheoremCase("E4.9", "Z_3: 1 is perfectly J-clean, not J-quasipolar; 2 the reverse", "ring is Z_3", _is_z3, check_E49),
        TheoremCase("L4.10", "a perfectly J-clean iff a quasipolar and a - a^2 in J", "any ring", _always, check_L410),
        TheoremCase("T4.11", "A in T_n(S) perfectly J-clean iff its diagonal entries are", "ring is T_n(S) with S commutative and 2 in J(S)", _tn_over_comm_2_in_J, check_T411),
        TheoremCase("C4.12", "S strongly J-clean iff T_n(S) perfectly J-clean", "ring is commutative", _commutative, check_C412),
        TheoremCase("L4.13", "perfect J-cleanness is invariant under unit conjugation", "any ring", _always, check_L413),
        TheoremCase("T4.14", "A in M_2(S): perfectly J-clean iff strongly J-clean iff root criterion", "ring is M_2(S) with S commutative local", _m2_over_comm_local, check_T414),
        TheoremCase("C4.15", "M_2(S) perfectly clean iff GL / I-GL / perfectly J-clean", "ring is M_2(S) with S commutative local", _m2_over_comm_local, check_C415),
    ]
}

CASE_IDS = tuple(CASES)


def verify(
    case: TheoremCase | str,
    ring: Ring | str,
    classifier: Classifier | None = None,
    seed: int = 0,
) -> VerificationReport:
    """Run one case on one ring.  Inapplicable cases come back ``skipped``."""
    case = CASES[case] if isinstance(case, str) else case
    ring = get_ring(ring) if isinstance(ring, str) else ring
    start = time.perf_counter()
    if not case.applies(ring):
        return VerificationReport(
            case.id, str(ring), "skipped", (time.perf_counter() - start) * 1000, reason=case.applicability
        )
    ctx = CaseContext(ring, classifier or Classifier(ring), seed)
    result = case.check(ctx)
    return VerificationReport(
        case.id,
        str(ring),
        "pass" if result.passed else "fail",
        (time.perf_counter() - start) * 1000,
        [str(x) for x in result.counterexamples],
        details=result.details,
    )


@dataclass
class SweepReport:
    reports: list[VerificationReport]

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if r.verdict == "fail"]

    @property
    def exit_status(self) -> int:
        return 1 if self.failures else 0

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.reports:
            out[r.verdict] += 1
        return out

    def to_json(self, timings: bool = True) -> dict:
        return {
            "summary": self.counts(),
            "reports": [r.to_json(timings) for r in self.reports],
        }

    def table(self) -> str:
        lines = []
        if any(r.case == "T3.2" for r in self.reports):
            lines.append("# T3.2 runs on finite local bases only; there J(S) is nil, so weak cobleaching is automatic")
        lines.append(f"{'case':<7} {'ring':<14} {'verdict':<8} note")
        for r in self.reports:
            note = r.reason or (", ".join(r.counterexamples) if r.counterexamples else "")
            lines.append(f"{r.case:<7} {r.ring:<14} {r.verdict:<8} {note}".rstrip())
        c = self.counts()
        lines.append(f"{c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
        return "\n".join(lines)


def _case_key(case_id: str) -> tuple:
    return CASE_IDS.index(case_id), case_id


def sweep(
    cases: Sequence[str | TheoremCase] | str = "all",
    rings: Iterable[Ring | str] = DEFAULT_SWEEP,
    max_order: int | None = DEFAULT_MAX_ORDER,
    threads: int = 1,
    seed: int = 0,
    classifier_factory: Callable[[Ring], Classifier] | None = None,
    deadline: float | None = None,
) -> SweepReport:
    """Run ``cases`` over ``rings``; reports come back in (case, ring) order.

    Rings above ``max_order`` are skipped with a budget reason instead of
    being built.  ``deadline`` (a :func:`time.monotonic` value) raises
    :class:`BudgetExceededError` once passed.
    """
    if cases == "all":
        cases = list(CASE_IDS)
    cases = [CASES[c] if isinstance(c, str) else c for c in cases]
    jobs: list[tuple[TheoremCase, Ring | None, str]] = []
    ring_names = []
    for r in rings:
        if isinstance(r, Ring):
            ring_names.append(str(r))
            jobs += [(c, r, str(r)) for c in cases]
            continue
        from .spec import parse_ring_spec

        spec = parse_ring_spec(r, None)
        ring_names.append(str(spec))
        ring = None if max_order is not None and spec.order > max_order else get_ring(spec, None)
        jobs += [(c, ring, str(spec)) for c in cases]

    def run(job) -> VerificationReport:
        case, ring, name = job
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError("time budget exhausted during sweep")
        if ring is None:
            return VerificationReport(case.id, name, "skipped", 0.0, reason=f"budget exceeded: order above {max_order}")
        clf = classifier_factory(ring) if classifier_factory else None
        return verify(case, ring, clf, seed)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            reports = list(pool.map(run, jobs))
    else:
        reports = [run(j) for j in jobs]
    order = {name: i for i, name in enumerate(ring_names)}
    reports.sort(key=lambda r: (_case_key(r.case), order.get(r.ring, 0)))
    return SweepReport(reports)
