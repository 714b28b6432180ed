"""A first look at small finite rings: elements, units, idempotents, radicals."""

import numpy as np

from cleanring import get_ring

# Rings are written as specs: Zn, Mk(...), Tk(...) and products with x.
Z4 = get_ring("Z4")
T = get_ring("T2(Z2)")
M = get_ring("M2(Z2)")

for R in (Z4, T, M):
    s = R.structure
    print(f"{R}: order {R.order}, {len(s.units)} units, {len(s.idempotents)} idempotents, |J| = {len(s.jacobson)}")

# Elements carry operators, so arithmetic reads like algebra.
A = T.parse_element("[[1,1],[0,1]]")
print("A =", A, " A^2 =", A * A, " A^-1 =", A.inverse())

# Under the hood every element is an index; mul/add broadcast over numpy arrays.
everything = M.all_indices()
squares = M.mul(everything, everything)
print("idempotents of M2(Z2):", [M.format(i) for i in everything[squares == everything]])

# The radical of T2(Z2) is the strictly upper part.
print("J(T2(Z2)) =", [str(x) for x in T.structure.jacobson])

# Double commutants shrink as the ring gets less commutative.
d = M.parse_element("[[0,0],[0,1]]")
print("comm^2(diag(0,1)) in M2(Z2):", [str(x) for x in M.structure.double_commutant(d)])

# Local rings: every element or its complement is a unit.
for spec in ("Z8", "Z6", "Z9", "T2(Z2)"):
    s = get_ring(spec).structure
    print(f"{spec:8} local={s.is_local!s:5} boolean mod J={s.is_boolean_mod_J}")

# Sizes grow quickly; M2(Z8) already has 4096 elements and is handled without tables.
big = get_ring("M2(Z8)")
print("units in M2(Z8):", len(big.structure.units), "of", big.order)
print("fraction invertible:", np.round(len(big.structure.units) / big.order, 4))
