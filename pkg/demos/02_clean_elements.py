"""Clean-type decompositions a = e + u and the idempotents that certify them."""

from cleanring import ALL_PROPERTIES, Classifier, Property, classify_ring, get_ring

# Every property is decided by scanning idempotents in canonical order.
Z6 = get_ring("Z6")
c = Classifier(Z6)
for prop in ALL_PROPERTIES:
    found = [str(Z6[int(e)]) for e in c.candidates(prop, 2)]
    print(f"2 in Z6, {prop.value:24} admissible idempotents: {found}")

# In Z3 the radical is zero, and the two J-flavoured notions split apart.
Z3 = get_ring("Z3")
c3 = Classifier(Z3)
for a in (1, 2):
    pjc = c3.witness(Property.PERFECTLY_J_CLEAN, a)
    jqp = c3.witness(Property.J_QUASIPOLAR, a)
    print(f"{a} in Z3: perfectly J-clean via {pjc.idempotent if pjc else None}, J-quasipolar via {jqp.idempotent if jqp else None}")

# A ring-level report gives a counterexample for each failing property.
report = classify_ring(Z3)
for prop, outcome in report.outcomes.items():
    print(f"Z3 {prop.value:24} {'holds' if outcome.holds else f'fails at {outcome.counterexample}'}")

# T2(T2(Z2)) is a 512-element ring in which every element is perfectly J-clean,
# each with exactly one admissible idempotent.
R = get_ring("T2(T2(Z2))")
cr = Classifier(R)
print(R, "perfectly J-clean:", cr.ring_holds(Property.PERFECTLY_J_CLEAN))
print("max idempotent count:", max(cr.count(Property.PERFECTLY_J_CLEAN, a) for a in range(R.order)))

# Witnesses are self-contained certificates.
w = cr.witness(Property.PERFECTLY_J_CLEAN, 300)
print("witness for", w.element, "->", w.idempotent, "replays:", w.verify())
print("hash:", w.to_json()["verification_hash"][:16], "...")
