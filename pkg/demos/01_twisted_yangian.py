"""A first look at the twisted Yangian inside Y(gl_2).

We build the generators s_ij^(r), check a few of their defining relations
exactly, and watch the Sklyanin determinant commute with everything.
"""

import itertools

from twyang.conventions import AI
from twyang.ncpoly import NCPoly
from twyang.twisted import TwistedCtx, centrality_check, check_quaternary, check_symmetry, sdet

tctx = TwistedCtx(AI, 2)

print("s_12^(2) in PBW normal form:")
print("  ", NCPoly(tctx.Y, tctx.s(1, 2, 2)))

# symmetry and quaternary relations, coefficient by coefficient
reports = [check_symmetry(i, j, r, tctx) for i, j in itertools.product((1, 2), repeat=2) for r in range(4)]
reports += [check_quaternary(1, 2, 2, 1, r, s, tctx) for r in range(3) for s in range(3)]
print(f"\n{sum(r.ok for r in reports)} of {len(reports)} relation instances hold")

c = sdet(tctx, 4)
print("\nSklyanin determinant, first coefficients:")
for r in range(1, 4):
    print(f"  c_{r} = {c.coeff(r)}")
print("\nc_2 central against s_ij^(t), t <= 3:", centrality_check(c.coeff(2), tctx, 3).status)
