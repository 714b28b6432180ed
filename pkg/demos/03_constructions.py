"""Explicit constructions: sums of units, idempotent lifts, root tests, diagonalisation."""

import numpy as np

from cleanring import Classifier, Property, get_ring
from cleanring import constructive as cx

# Doubling a matrix splits it into two invertible matrices with known inverses.
M = get_ring("M2(Z3)")
A = M.parse_element("[[1,2],[0,1]]")
d = cx.thm26_decompose(A)
print(f"2*{A} = {d.U} + {d.V}; checks out: {d.verify()}")

# The same works for 3x3 matrices over Z9 (387 million elements, never enumerated).
M3 = get_ring("M3(Z9)", None)
rng = np.random.default_rng(1)
B = M3[int(rng.integers(M3.order))]
print("random 3x3 over Z9:", B, "->", cx.thm26_decompose(B).verify())

# An idempotent polynomial recovers the nil-clean idempotent of a.
Z8 = get_ring("Z8")
for a in Z8:
    if Classifier(Z8).holds(Property.STRONGLY_NIL_CLEAN, a.index):
        print(f"f({a}) = {cx.thm23_eval(a)}", end="  ")
print()

# Over a triangular ring the perfectly J-clean idempotent is built entry by entry.
T = get_ring("T3(Z2)")
A = T.parse_element("[[1,1,0],[0,0,1],[0,0,1]]")
E = cx.thm411_lift(A)
print("lift of", A, "is", E, "| A - E in J:", (A - E) in T.structure.jacobson)

# 2x2 matrices over a commutative local ring: roots of the characteristic polynomial decide.
M4 = get_ring("M2(Z4)")
for literal in ("[[0,0],[0,1]]", "[[1,1],[0,1]]", "[[2,1],[0,3]]"):
    rc = cx.thm414_root_criterion(M4.parse_element(literal))
    print(f"{literal:15} tr={rc.trace} det={rc.det} roots={[str(r) for r in rc.roots]} -> {rc.kind}")

# Non-invertible matrices with non-invertible complement are diagonalisable over Z2.
M2 = get_ring("M2(Z2)")
for literal in ("[[0,1],[0,1]]", "[[0,1],[0,0]]"):
    X = M2.parse_element(literal)
    U = cx.similarity_to_diagonal(X)
    print(literal, "->", "not diagonalisable" if U is None else f"U={U}, UXU^-1={U * X * U.inverse()}")

# Linear maps x -> ax - xb on T2(Z9) bases.
Z9 = get_ring("Z9")
print("3x - x*4 = 1 in Z9:", cx.thm34_sylvester(Z9[3], Z9[4], Z9[1]).solutions.to_json())
print("T2(Z9) passes the uniqueness criterion:", cx.thm34_t2_criterion(get_ring("T2(Z9)")))
