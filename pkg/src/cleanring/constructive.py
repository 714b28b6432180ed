"""Executable constructions: each builds an explicit object from a witness and
checks its own postcondition before returning it.

A bad input raises :class:`PreconditionError`; a construction that fails its
own check raises :class:`PostconditionError` (a bug, never an input problem).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classify import Classifier, Property
from .errors import BudgetExceededError, PostconditionError, PreconditionError
from .ring import Element, Ring
from .spec import DEFAULT_MAX_ORDER, MatrixRing, TriangularRing
from .structure import ElementSet

Grid = list[list[int]]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def _ensure(cond: bool, message: str) -> None:
    if not cond:
        raise PostconditionError(message)


def _same_ring(*xs: Element) -> Ring:
    ring = xs[0].ring
    _require(all(x.ring == ring for x in xs), "operands belong to different rings")
    return ring


# -- perfectly clean witness <-> regular element -------------------------------


@dataclass(frozen=True)
class RegularWitness:
    """``x in comm^2(a)`` with ``x = xax`` and ``1 - x = (1 - a)s = t(1 - a)``."""

    a: Element
    x: Element
    s: Element
    t: Element

    def verify(self) -> bool:
        a, x, s, t = self.a, self.x, self.s, self.t
        ring = a.ring
        one = Element(ring, ring.one)
        return (
            x in ring.structure.double_commutant(a)
            and x * a * x == x
            and one - x == (one - a) * s
            and one - x == t * (one - a)
        )


def thm21_e_to_x(a: Element, e: Element) -> RegularWitness:
    """From a perfectly clean idempotent ``e`` of ``a`` build ``x = (a - e)^-1 (1 - e)``.

    Since ``a - e = (1 - e) - (1 - a)``, ``1 - x = -(a - e)^-1 (1 - a)``; the
    factor ``-(a - e)^-1`` commutes with ``a`` and so serves as both ``s`` and ``t``.
    """
    ring = _same_ring(a, e)
    s = ring.structure
    _require(e * e == e, f"{e} is not idempotent")
    _require(e in s.double_commutant(a), f"{e} is not in comm^2({a})")
    u_inv = (a - e).inverse()
    _require(u_inv is not None, f"{a} - {e} is not a unit")
    x = u_inv * (1 - e)
    w = RegularWitness(a, x, -u_inv, -u_inv)
    _ensure(w.verify(), f"e -> x construction failed for a={a}, e={e}")
    return w


def _solve_left(ring: Ring, c: int, target: int) -> int | None:
    hits = np.flatnonzero(ring.mul_row(c) == target)
    return int(hits[0]) if len(hits) else None


def _solve_right(ring: Ring, c: int, target: int) -> int | None:
    hits = np.flatnonzero(ring.mul_col(c) == target)
    return int(hits[0]) if len(hits) else None


def thm21_x_to_e(
    a: Element, x: Element, s: Element | None = None, t: Element | None = None
) -> Element:
    """From ``x`` as in :class:`RegularWitness` build the idempotent ``e = 1 - ax``.

    Missing ``s``/``t`` are found by search.  The unit ``a - e`` is certified by
    the explicit two-sided inverse ``x - es`` / ``x - te``.
    """
    ring = _same_ring(a, x)
    one = Element(ring, ring.one)
    st = ring.structure
    _require(x in st.double_commutant(a), f"{x} is not in comm^2({a})")
    _require(x * a * x == x, f"x a x != x for x={x}")
    if s is None:
        found = _solve_left(ring, (one - a).index, (one - x).index)
        _require(found is not None, "1 - x is not in (1 - a)R")
        s = Element(ring, found)
    if t is None:
        found = _solve_right(ring, (one - a).index, (one - x).index)
        _require(found is not None, "1 - x is not in R(1 - a)")
        t = Element(ring, found)
    _require(one - x == (one - a) * s, "1 - x != (1 - a)s")
    _require(one - x == t * (one - a), "1 - x != t(1 - a)")
    e = one - a * x
    _ensure(e * e == e, "1 - ax is not idempotent")
    _ensure(e in st.double_commutant(a), "1 - ax is not in comm^2(a)")
    _ensure((a - e) * (x - e * s) == one, "(a - e)(x - es) != 1")
    _ensure((x - t * e) * (a - e) == one, "(x - te)(a - e) != 1")
    return e


def cor22_corner_check(a: Element, e: Element) -> bool:
    """``eae in U(eRe)`` and ``(1-e)(1-a)(1-e) in U((1-e)R(1-e))``."""
    ring = _same_ring(a, e)
    s = ring.structure
    _require(e * e == e, f"{e} is not idempotent")
    _require(e in s.double_commutant(a), f"{e} is not in comm^2({a})")
    f = 1 - e
    top = s.is_unit_in_corner(s.corner(e), e * a * e)
    bottom = s.is_unit_in_corner(s.corner(f), f * (1 - a) * f)
    return top and bottom


# -- the nil-clean idempotent polynomial ---------------------------------------


def thm23_idempotent_poly(n: int) -> list[int]:
    """Integer coefficients (constant term first) of
    ``f(t) = sum_{i=0}^{n} C(2n, i) t^(2n-i) (1-t)^i``."""
    if n < 1:
        raise PreconditionError("nilpotency index must be at least 1")
    coeffs = [0] * (2 * n + 1)
    for i in range(n + 1):
        c = math.comb(2 * n, i)
        # t^(2n-i) (1-t)^i = sum_j C(i, j) (-1)^j t^(2n-i+j)
        for j in range(i + 1):
            coeffs[2 * n - i + j] += c * math.comb(i, j) * (-1) ** j
    return coeffs


def evaluate_poly(coeffs: list[int], a: Element) -> Element:
    ring = a.ring
    acc = ring.zero
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, a.index), ring.from_int(c))
    return Element(ring, acc)


def thm23_eval(a: Element) -> Element:
    """``e = f(a)`` for the least ``n`` with ``(a - a^2)^n = 0``.

    ``e`` is an idempotent in ``comm^2(a)`` and ``a - e`` is nilpotent.
    """
    ring = a.ring
    s = ring.structure
    n = s.nilpotency_index(a - a * a)
    if n is None:
        raise PreconditionError(f"{a} - {a}^2 is not nilpotent")
    e = evaluate_poly(thm23_idempotent_poly(n), a)
    _ensure(e * e == e, "f(a) is not idempotent")
    _ensure(e in s.double_commutant(a), "f(a) is not in comm^2(a)")
    _ensure(a - e in s.nilpotents, "a - f(a) is not nilpotent")
    return e


def lemma25_two_sided_witness(a: Element) -> Element:
    """Idempotent ``e in comm^2(a)`` with both ``a - e`` and ``a + e`` units,
    taken from a perfectly clean witness of ``a^2`` (``a^2 - e = (a - e)(a + e)``)."""
    ring = a.ring
    s = ring.structure
    w = Classifier(ring).witness(Property.PERFECTLY_CLEAN, (a * a).index)
    if w is None:
        raise PreconditionError(f"{a}^2 has no perfectly clean witness")
    e = w.idempotent
    _ensure(e in s.double_commutant(a), "witness of a^2 is not in comm^2(a)")
    _ensure(a - e in s.units and a + e in s.units, "a - e or a + e is not a unit")
    return e


# -- matrices over a base ring ---------------------------------------------------


def _mat_mul(S: Ring, A: Grid, B: Grid) -> Grid:
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = S.zero
            for l in range(inner):
                acc = S.add(acc, S.mul(A[i][l], B[l][j]))
            row.append(acc)
        out.append(row)
    return out


def _mat_add(S: Ring, A: Grid, B: Grid) -> Grid:
    return [[S.add(x, y) for x, y in zip(r, q)] for r, q in zip(A, B)]


def _mat_sub(S: Ring, A: Grid, B: Grid) -> Grid:
    return [[S.sub(x, y) for x, y in zip(r, q)] for r, q in zip(A, B)]


def _mat_scale(S: Ring, c: int, A: Grid) -> Grid:
    return [[S.scale(c, x) for x in r] for r in A]


def _identity(S: Ring, n: int) -> Grid:
    return [[S.one if i == j else S.zero for j in range(n)] for i in range(n)]


def _block(S: Ring, top_left: int, top: list[int], left: list[int], rest: Grid) -> Grid:
    return [[top_left] + list(top)] + [[left[i]] + list(rest[i]) for i in range(len(rest))]


@dataclass(frozen=True)
class SumOfUnitsDecomposition:
    """``2A = U + V`` with explicit inverses of ``U`` and ``V``."""

    A: Element
    U: Element
    V: Element
    U_inv: Element
    V_inv: Element

    def verify(self) -> bool:
        ring = self.A.ring
        one = Element(ring, ring.one)
        return (
            self.A + self.A == self.U + self.V
            and self.U * self.U_inv == one
            and self.U_inv * self.U == one
            and self.V * self.V_inv == one
            and self.V_inv * self.V == one
        )

    def to_json(self) -> dict:
        return {
            "ring": str(self.A.ring),
            "A": str(self.A),
            "U": str(self.U),
            "V": str(self.V),
            "U_inv": str(self.U_inv),
            "V_inv": str(self.V_inv),
            "verified": self.verify(),
        }


def _decompose(S: Ring, A: Grid) -> tuple[Grid, Grid, Grid, Grid]:
    """Returns ``(U, V, U^-1, V^-1)`` with ``2A = U + V``, splitting off the (1,1) entry."""
    st = S.structure
    x = A[0][0]
    e = lemma25_two_sided_witness(Element(S, x)).index
    u, v = S.sub(x, e), S.add(x, e)
    u_inv, v_inv = st.inv(u), st.inv(v)
    if len(A) == 1:
        return [[u]], [[v]], [[u_inv]], [[v_inv]]
    k = len(A) - 1
    alpha = A[0][1:]
    beta = [row[0] for row in A[1:]]
    X = [row[1:] for row in A[1:]]
    # corr = 2 beta v^-1 alpha
    corr = [[S.scale(2, S.mul(S.mul(beta[i], v_inv), alpha[j])) for j in range(k)] for i in range(k)]
    U1, V1, U1_inv, V1_inv = _decompose(S, _mat_sub(S, X, corr))
    zeros = [S.zero] * k
    two_alpha = [S.scale(2, y) for y in alpha]
    two_beta = [S.scale(2, y) for y in beta]
    U = _block(S, u, zeros, zeros, U1)
    U_inv = _block(S, u_inv, zeros, zeros, U1_inv)
    V = _block(S, v, two_alpha, two_beta, _mat_add(S, V1, _mat_scale(S, 2, corr)))
    # V = L M with L = [[1, 0], [2 beta v^-1, I]] and M = [[v, 2 alpha], [0, V1]]
    top = _mat_mul(S, [[S.neg(v_inv)]], _mat_mul(S, [two_alpha], V1_inv))[0]
    M_inv = _block(S, v_inv, top, zeros, V1_inv)
    L_inv = _block(S, S.one, zeros, [S.neg(S.mul(b, v_inv)) for b in two_beta], _identity(S, k))
    return U, V, U_inv, _mat_mul(S, M_inv, L_inv)


def thm26_decompose(A: Element) -> SumOfUnitsDecomposition:
    """Write ``2A = U + V`` with ``U, V`` invertible, for ``A`` in ``M_n(S)``.

    Elements of rings that are not full matrix rings are treated as 1x1
    matrices.  The recursion always splits on the (1,1) entry: an idempotent
    ``e`` with ``x - e`` and ``x + e`` both units gives ``2x = u + v`` there, and the lower block is corrected
    to ``X - 2 beta v^-1 alpha`` before recursing.
    """
    ring = A.ring
    if isinstance(ring.spec, MatrixRing):
        S, grid = ring.base, ring.grid(A.index)
        U, V, Ui, Vi = _decompose(S, grid)
        wrap = lambda g: Element(ring, ring.from_grid(g))
    else:
        U, V, Ui, Vi = _decompose(ring, [[A.index]])
        wrap = lambda g: Element(ring, g[0][0])
    d = SumOfUnitsDecomposition(A, wrap(U), wrap(V), wrap(Ui), wrap(Vi))
    _ensure(d.verify(), f"2A = U + V decomposition failed for {A}")
    return d


# -- Sylvester-type equations ---------------------------------------------------------


@dataclass(frozen=True)
class SylvesterSolution:
    """All ``x`` with ``ax - xb = v``."""

    a: Element
    b: Element
    v: Element
    solutions: ElementSet

    @property
    def unique(self) -> bool:
        return len(self.solutions) == 1

    def to_json(self) -> dict:
        ring = self.a.ring
        return {
            "ring": str(ring),
            "a": str(self.a),
            "b": str(self.b),
            "v": str(self.v),
            "solutions": [ring.format(i) for i in self.solutions.indices],
            "solution_indices": self.solutions.to_json(),
            "unique": self.unique,
        }


def thm34_sylvester(a: Element, b: Element, v: Element) -> SylvesterSolution:
    ring = _same_ring(a, b, v)
    image = ring.sub(ring.mul_row(a.index), ring.mul_col(b.index))
    sol = SylvesterSolution(a, b, v, ElementSet(ring, image == v.index))
    _ensure(all(a * x - x * b == v for x in sol.solutions), "listed solution fails")
    return sol


def thm34_t2_criterion(ring: Ring) -> bool:
    """For ``T_2(S)`` with ``S`` local: whether ``ax - xb = v`` has exactly one solution
    in ``S`` for every ``a in J(S)``, ``b in 1 + J(S)``, ``v in S``."""
    _require(
        isinstance(ring.spec, TriangularRing) and ring.k == 2, f"{ring} is not of the form T2(S)"
    )
    S = ring.base
    st = S.structure
    _require(st.is_local, f"{S} is not local")
    for a in st.jacobson.indices:
        for b in st.one_plus_jacobson.indices:
            image = S.sub(S.mul_row(int(a)), S.mul_col(int(b)))
            if len(np.unique(image)) != S.order:
                return False
    return True


# -- idempotent lifting in triangular rings -------------------------------------


def _triangular_inverse(S: Ring, M: Grid) -> Grid:
    st = S.structure
    n = len(M)
    X = [[S.zero] * n for _ in range(n)]
    for j in range(n):
        X[j][j] = st.inv(M[j][j])
        for i in range(j - 1, -1, -1):
            acc = S.zero
            for l in range(i + 1, j + 1):
                acc = S.add(acc, S.mul(M[i][l], X[l][j]))
            X[i][j] = S.neg(S.mul(st.inv(M[i][i]), acc))
    return X


def _lift(S: Ring, classifier: Classifier, A: Grid) -> Grid:
    a11 = A[0][0]
    w = classifier.witness(Property.PERFECTLY_J_CLEAN, a11)
    if w is None:
        raise PreconditionError(f"diagonal entry {S.format(a11)} is not perfectly J-clean in {S}")
    e11 = w.idempotent.index
    if len(A) == 1:
        return [[e11]]
    n1 = len(A) - 1
    w11 = S.sub(a11, e11)
    alpha = [A[0][1:]]
    A1 = [row[1:] for row in A[1:]]
    E1 = _lift(S, classifier, A1)
    W1 = _mat_sub(S, A1, E1)
    c = S.sub(S.sub(S.one, S.scale(2, e11)), w11)
    I = _identity(S, n1)
    M = _mat_add(S, W1, [[S.mul(c, y) for y in row] for row in I])
    shifted = _mat_sub(S, E1, [[S.mul(e11, y) for y in row] for row in I])
    beta = _mat_mul(S, _mat_mul(S, alpha, shifted), _triangular_inverse(S, M))[0]
    return _block(S, e11, beta, [S.zero] * n1, E1)


def thm411_lift(A: Element) -> Element:
    """Perfectly J-clean idempotent of ``A in T_n(S)`` built entry by entry.

    Needs ``S`` commutative with ``2 in J(S)`` and each diagonal entry of ``A``
    perfectly J-clean in ``S``.  The off-diagonal row is
    ``beta = alpha (E_1 - e_11 I) (W_1 + (1 - 2 e_11 - w_11) I)^-1``.
    """
    ring = A.ring
    _require(isinstance(ring.spec, TriangularRing), f"{ring} is not a triangular matrix ring")
    S = ring.base
    st = S.structure
    _require(st.is_commutative, f"{S} is not commutative")
    _require(S.from_int(2) in st.jacobson, f"2 is not in J({S})")
    E = Element(ring, ring.from_grid(_lift(S, Classifier(S), ring.grid(A.index))))
    rs = ring.structure
    _ensure(E * E == E, "lifted E is not idempotent")
    _ensure(E in rs.double_commutant(A), "lifted E is not in comm^2(A)")
    _ensure(A - E in rs.jacobson, "A - E is not in J(T_n(S))")
    return E


# -- 2x2 matrices over commutative local rings ------------------------------------


def _require_m2(ring: Ring) -> Ring:
    _require(isinstance(ring.spec, MatrixRing) and ring.k == 2, f"{ring} is not of the form M2(S)")
    return ring.base


@dataclass(frozen=True)
class RootClassification:
    """Which branch of the characteristic-root criterion ``A`` falls in.

    ``kind`` is ``"in-radical"`` (A in J(M2)), ``"identity-minus-in-radical"``
    (I - A in J(M2)), ``"roots"`` (``x^2 - tr(A) x + det(A)`` has a root in
    ``J(S)`` and one in ``1 + J(S)``) or ``"none"``.
    """

    A: Element
    kind: str
    trace: Element
    det: Element
    roots: tuple[Element, ...]
    root_in_J: Element | None = None
    root_in_1_plus_J: Element | None = None

    @property
    def holds(self) -> bool:
        return self.kind != "none"

    def to_json(self) -> dict:
        opt = lambda x: None if x is None else str(x)
        return {
            "ring": str(self.A.ring),
            "A": str(self.A),
            "kind": self.kind,
            "trace": str(self.trace),
            "det": str(self.det),
            "roots": [str(r) for r in self.roots],
            "root_in_J": opt(self.root_in_J),
            "root_in_1_plus_J": opt(self.root_in_1_plus_J),
            "holds": self.holds,
        }


def thm414_root_criterion(A: Element) -> RootClassification:
    ring = A.ring
    S = _require_m2(ring)
    st = S.structure
    _require(st.is_commutative and st.is_local, f"{S} is not commutative local")
    (a, b), (c, d) = ring.grid(A.index)
    tr = S.add(a, d)
    det = S.sub(S.mul(a, d), S.mul(b, c))
    xs = S.all_indices()
    values = S.add(S.sub(S.mul(xs, xs), S.mul(tr, xs)), det)
    roots = [int(x) for x in xs[values == S.zero]]
    base = dict(A=A, trace=Element(S, tr), det=Element(S, det), roots=tuple(Element(S, r) for r in roots))
    rs = ring.structure
    if A.index in rs.jacobson:
        return RootClassification(kind="in-radical", **base)
    if ring.sub(ring.one, A.index) in rs.jacobson:
        return RootClassification(kind="identity-minus-in-radical", **base)
    in_j = [r for r in roots if r in st.jacobson]
    in_1j = [r for r in roots if r in st.one_plus_jacobson]
    if in_j and in_1j:
        return RootClassification(
            kind="roots", root_in_J=Element(S, in_j[0]), root_in_1_plus_J=Element(S, in_1j[0]), **base
        )
    return RootClassification(kind="none", **base)


def is_diagonal(A: Element) -> bool:
    g = A.ring.grid(A.index)
    return all(g[i][j] == 0 for i in range(len(g)) for j in range(len(g)) if i != j)


def similarity_to_diagonal(A: Element, max_order: int = DEFAULT_MAX_ORDER) -> Element | None:
    """Some ``U in GL_2(S)`` with ``U A U^-1`` diagonal, or ``None`` when no unit works.

    A diagonal ``A`` returns the identity.  Otherwise the units of ``M_2(S)`` are
    scanned in canonical order; that needs the ring enumerated, so rings above
    ``max_order`` raise :class:`BudgetExceededError`.
    """
    ring = A.ring
    S = _require_m2(ring)
    if is_diagonal(A):
        return Element(ring, ring.one)
    if ring.order > max_order:
        raise BudgetExceededError(f"GL_2 scan of {ring} exceeds the order budget {max_order}")
    st = ring.structure
    us = st.units.indices
    conj = ring.mul(ring.mul(us, A.index), st.inverse_map[us])
    comps = ring.decode(conj).reshape(len(us), 2, 2, S.dim)
    diagonal = ~(comps[:, 0, 1].any(axis=1) | comps[:, 1, 0].any(axis=1))
    hits = np.flatnonzero(diagonal)
    if len(hits) == 0:
        return None
    U = Element(ring, int(us[hits[0]]))
    _ensure(is_diagonal(U * A * U.inverse()), "conjugate is not diagonal")
    return U
