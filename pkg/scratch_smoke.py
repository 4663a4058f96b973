"""Throwaway smoke run for the idempotents layer."""
import time

from catidem.group_modules import GroupAlgebra, trivial_module
from catidem.idempotents import (
    minimal_resolution, standard_pair, unit_pair, zero_pair, verify_pair,
    dual_pair, tate_object, tate_unital_comparison, tate_cohomology_ring,
    meet_join, canonical_map, relative_subquotient, mayer_vietoris_check,
    MEET, JOIN,
)

t0 = time.time()
A2 = GroupAlgebra(2, (2,))
res = minimal_resolution(A2, trivial_module(A2))
print("res F2[Z/2]:", res.note, "period", res.period, "seam", res.seam,
      "window", res.complex.lo, res.complex.hi,
      "dims", [res.complex.term(k).dim for k in range(-4, 1)])

tri = standard_pair(A2)
print("tri built", tri.counital, tri.unital, f"{time.time()-t0:.2f}s")

rep = verify_pair(tri, (-4, 4))
for c in rep.checks:
    print(f"  {c.name}: {c.verdict} [{c.tier}] {c.detail[:60]}")
print("verify_pair verdict:", rep.verdict, f"{time.time()-t0:.2f}s")

dtri = dual_pair(tri, window=(-2, 2))
for c in dtri.ledger:
    print(f"  dual {c.name}: {c.verdict} [{c.tier}]")

tr = tate_cohomology_ring(tri, (-4, 4))
print("tate degrees:", dict(sorted(tr.table.degrees.items())))
for c in tr.report.checks:
    print(f"  tate {c.name}: {c.verdict} [{c.tier}] {c.detail[:60]}")
print(f"{time.time()-t0:.2f}s")

up = unit_pair(A2)
zp = zero_pair(A2)
mj = meet_join(tri, tri, MEET, window=(-3, 3))
print("meet(std,std) unital window", mj.unital.lo, mj.unital.hi)
jj = meet_join(tri, tri, JOIN, window=(-3, 3))
print("join(std,std) counital window", jj.counital.lo, jj.counital.hi)

cm = canonical_map(up, tri, (-3, 3))
print("canonical 1->std coords", cm.coords, "window", cm.map.lo, cm.map.hi)

sq = relative_subquotient(up, tri, (-3, 3))
print("subquotient check:", sq.comparison.verdict, sq.comparison.detail[:80])

mv = mayer_vietoris_check(up, tri, (-3, 3))
print("MV(1,std):", mv.verdict)
for c in mv.checks:
    print(f"  mv {c.name}: {c.verdict} [{c.tier}] {c.detail[:60]}")
for n in mv.notes:
    print("  note:", n)

mv2 = mayer_vietoris_check(tri, tri, (-3, 3))
print("MV(std,std):", mv2.verdict)
for c in mv2.checks:
    print(f"  mv2 {c.name}: {c.verdict} [{c.tier}] {c.detail[:60]}")
for n in mv2.notes:
    print("  note:", n)
print(f"total {time.time()-t0:.2f}s")
