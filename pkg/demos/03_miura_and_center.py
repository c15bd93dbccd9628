"""The Miura transform of a truncation, its kernel, and a central series.

The truncation ideal maps to zero, the Pfaffian candidate stays central, and
the coefficients of Z_M(u) commute with every generator.
"""

from twyang.center import center_series, center_verify, leading_monomials, pfaffian_verify
from twyang.conventions import AI
from twyang.morphisms import MiuraPlan, miura_verify
from twyang.shifted import TruncatedCtx

tr = TruncatedCtx.build(AI, 2, None, 3)
print("Miura plan:", MiuraPlan(tr).describe())
reps = miura_verify(tr, extra=3)
print(f"ideal generators killed: {sum(r.ok for r in reps)}/{len(reps)}")

cs = center_series(tr)
z2 = cs.z(2)
print("\nz_2 =", z2)
print("leading words:", leading_monomials(z2, 3))
print("center checks:", {r.relation: r.status for r in center_verify(tr, cs=cs)})

print("\nPfaffian:")
for r in pfaffian_verify(tr):
    print(f"  {r.relation:28s} {r.status}")
