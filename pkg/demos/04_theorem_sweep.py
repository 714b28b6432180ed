"""Run every structural check over the default family of rings and print the table."""

import time

from cleanring.harness import DEFAULT_SWEEP, sweep

start = time.perf_counter()
report = sweep("all", DEFAULT_SWEEP, threads=4)
print(report.table())
print(f"elapsed {time.perf_counter() - start:.1f}s")

# Biconditionals should be seen both ways round across the family.
for case in ("T4.1", "P4.4", "C4.5"):
    seen = sorted({(r.details["lhs"], r.details["rhs"]) for r in report.reports if r.case == case and r.verdict == "pass"})
    print(case, "truth configurations:", seen)
