"""The relation library of the parabolic presentations.

Every relation is a function ``rel(P, **idx) -> (lhs, rhs)`` returning raw
elements of ``P.ctx`` for a realization ``P`` (see :mod:`twyang.parabolic`).
:func:`instances` enumerates admissible index assignments under superscript
bounds and :func:`run_suite` checks them, producing :class:`Report` rows.
"""

from __future__ import annotations

import itertools
import os
import time
from math import comb
from typing import Iterator

from gmpy2 import mpq

from .conventions import AI, AII
from .ncpoly import ONE, NCPoly, acc, dadd, dscale
from .twisted import Report



def _corrupted(name: str) -> bool:
    # testing hook: TWYANG_CORRUPT=pr6 flips a sign in that relation
    return name in os.environ.get("TWYANG_CORRUPT", "").split(",")


def _add(out: dict, x: dict, c=ONE):
    for w, v in x.items():
        acc(out, w, c * v)



# -- individual relations ------------------------------------------------------

def pr1(P, i, r):
    """H_{1;i,i}^(2r-1) + H_{1;i',i'}^(2r-1) = 0."""
    lhs = dadd(P.H(1, i, i, 2 * r - 1), P.H(1, P.pr(i), P.pr(i), 2 * r - 1))
    return lhs, {}


def pr2(P, a, i, j, r):
    lhs: dict = {}
    for p in range(1, P.mu[a - 1] + 1):
        for t in range(r + 1):
            _add(lhs, P.mul(P.H(a, i, p, t), P.Ht(a, p, j, r - t)))
    rhs = {(): ONE} if (r == 0 and i == j) else {}
    return lhs, rhs


def pr3(P, a, i, j, b, k, l, r, s):
    lhs = P.bracket(P.H(a, i, j, r), P.H(b, k, l, s))
    rhs: dict = {}
    if a != b:
        return lhs, rhs
    th, pr, H, m = P.th, P.pr, P.H, P.mul
    for t in range(r):
        _add(rhs, m(H(a, k, j, r - 1 - t), H(a, i, l, s + t)))
        _add(rhs, m(H(a, k, j, s + t), H(a, i, l, r - 1 - t)), -ONE)
        sg = mpq((-1) ** t)
        _add(rhs, m(H(a, i, pr(k), r - 1 - t), H(a, pr(j), l, s + t)), -sg * th(k) * th(pr(j)))
        _add(rhs, m(H(a, k, pr(i), s + t), H(a, pr(l), j, r - 1 - t)), sg * th(i) * th(pr(l)))
    c = mpq(th(i) * th(pr(j)))
    for t in range(r // 2):
        _add(rhs, m(H(a, k, pr(i), r - 2 - 2 * t), H(a, pr(j), l, s + 2 * t)), c)
        _add(rhs, m(H(a, k, pr(i), s + 2 * t), H(a, pr(j), l, r - 2 - 2 * t)), -c)
    return lhs, rhs


def pr4(P, a, i, j, b, k, l, r, s):
    """[H_{a;i,j}^(r), B_{b;k,l}^(s)]."""
    lhs = P.bracket(P.H(a, i, j, r), P.B(b, k, l, s))
    rhs: dict = {}
    th, pr, H, B, m = P.th, P.pr, P.H, P.B, P.mul
    if a == b:
        half = mpq(P.mu[a - 1], 2)
        for p in range(1, P.mu[a - 1] + 1):
            for mm in range(r):
                for t in range(mm + 1):
                    w = comb(mm, t) * half ** (mm - t)
                    if j == pr(l):
                        c = (-1) ** mm * th(pr(l)) * th(p) * w
                        _add(rhs, m(H(a, i, p, r - mm - 1), B(a, k, pr(p), s + t)), c)
                    if i == l:
                        c = (-1) ** (mm - t) * w
                        _add(rhs, m(B(a, k, p, s + t), H(a, p, j, r - mm - 1)), -c)
    if a == b + 1:
        for mm in range(r):
            c = mpq((-1) ** (mm + 1) * th(pr(j)) * th(k))
            _add(rhs, m(H(a, i, pr(k), r - 1 - mm), B(b, pr(j), l, s + mm)), c)
            _add(rhs, m(B(b, i, l, s + mm), H(a, k, j, r - 1 - mm)))
    return lhs, rhs


def pr5(P, a, i, j, b, k, l, r, s):
    return P.bracket(P.B(a, i, j, r), P.B(b, k, l, s)), {}


def pr6(P, a, i, j, k, l, r, s):
    lhs = P.bracket(P.B(a, i, j, r), P.B(a, k, l, s))
    rhs: dict = {}
    B, m = P.B, P.mul
    # the two sums of the relation, with their common terms cancelled
    if r > s:
        for t in range(s, r):
            _add(rhs, m(B(a, k, j, r + s - 1 - t), B(a, i, l, t)))
    elif s > r:
        for t in range(r, s):
            _add(rhs, m(B(a, k, j, r + s - 1 - t), B(a, i, l, t)), -ONE)
    c = -mpq((-1) ** r * P.th(i) * P.th(j))
    if _corrupted("pr6"):
        c = -c
    _add(rhs, P.Z(a, P.pr(j), l, k, P.pr(i), r + s - 1), c)
    return lhs, rhs


def pr7(P, a, i, j, k, l, r, s):
    B, br = P.B, P.bracket
    lhs = br(B(a, i, j, r + 1), B(a + 1, k, l, s))
    rhs = dict(br(B(a, i, j, r), B(a + 1, k, l, s + 1)))
    _add(rhs, br(B(a, i, j, r), B(a + 1, k, l, s)), mpq(P.mu[a], 2))
    if i == l:
        for q in range(1, P.mu[a] + 1):
            _add(rhs, P.mul(B(a, q, j, r), B(a + 1, k, q, s)), -ONE)
    return lhs, rhs


def _serre_lhs(P, x_blk, xi, xj, s, y_blk, yi, yj, fi, fj, r1, r2):
    B, br = P.B, P.bracket
    x = B(x_blk, xi, xj, s)
    out = dict(br(br(x, B(y_blk, yi, yj, r1)), B(y_blk, fi, fj, r2)))
    _add(out, br(br(x, B(y_blk, yi, yj, r2)), B(y_blk, fi, fj, r1)))
    return out


def pr_serre1(P, a, i, j, k, l, f, g, s, r1, r2):
    lhs = _serre_lhs(P, a, i, j, s, a + 1, k, l, f, g, r1, r2)
    rhs: dict = {}
    e = (-1) ** r1 + (-1) ** r2
    if not e:
        return lhs, rhs
    if P.mu[a] > 1:
        if i == l:
            z = P.Z(a + 1, P.pr(l), g, f, P.pr(k), r1 + r2 - 1)
            _add(rhs, P.bracket(z, P.B(a, i, j, s)), mpq(e * P.th(k) * P.th(l)))
    else:
        n = r1 + r2 - 1
        for p in range(1, n + 1):
            for q in range(n - p + 1):
                c = mpq(e * (-1) ** (p - 1) * comb(p + q - 1, q), 2 ** q)
                _add(rhs, P.mul(P.B(a, i, j, p + s - 1), P.Z(a + 1, l, l, f, k, n - p - q)), c)
    return lhs, rhs


def pr_serre2(P, a, i, j, k, l, f, g, s, r1, r2):
    lhs = _serre_lhs(P, a + 1, i, j, s, a, k, l, f, g, r1, r2)
    rhs: dict = {}
    e = (-1) ** r1 + (-1) ** r2
    if not e:
        return lhs, rhs
    if P.mu[a] > 1:
        if j == k:
            z = P.Z(a, P.pr(l), g, f, P.pr(k), r1 + r2 - 1)
            _add(rhs, P.bracket(z, P.B(a + 1, i, j, s)), mpq(e * P.th(k) * P.th(l)))
    else:
        n = r1 + r2 - 1
        for p in range(1, n + 1):
            for q in range(n - p + 1):
                c = mpq(e * (-1) ** q * comb(p + q - 1, q), 2 ** q)
                _add(rhs, P.mul(P.B(a + 1, i, j, p + s - 1), P.Z(a, g, l, j, j, n - p - q)), c)
    return lhs, rhs


def pr_serre_fin1(P, a, i, j, k, l, f, g):
    """[[B_{a+1;i,j}, B_{a;k,l}], B_{a;f,g}] at level one."""
    B, br = P.B, P.bracket
    lhs = br(br(B(a + 1, i, j, 1), B(a, k, l, 1)), B(a, f, g, 1))
    rhs: dict = {}
    if j == k and P.pr(g) == l:
        _add(rhs, B(a + 1, i, P.pr(f), 1), -mpq(P.th(f) * P.th(g)))
    return lhs, rhs


def pr_serre_fin2(P, a, i, j, k, l, f, g):
    """[[B_{a;i,j}, B_{a+1;k,l}], B_{a+1;f,g}] at level one."""
    B, br = P.B, P.bracket
    lhs = br(br(B(a, i, j, 1), B(a + 1, k, l, 1)), B(a + 1, f, g, 1))
    rhs: dict = {}
    if i == l and P.pr(f) == k:
        _add(rhs, B(a, P.pr(g), j, 1), -mpq(P.th(f) * P.th(g)))
    return lhs, rhs


def zs(P, a, i, j, r):
    """Z_{a;i,i,j,j}^(2r-1) = 0 (type AI; shifted form for r <= s_{a+1,a})."""
    return P.Z(a, i, i, j, j, 2 * r - 1), {}


def zs_a2(P, a, i, j, r):
    """Z_{a;i,i,j,j}^(2r-1) + Z_{a;i',i',j',j'}^(2r-1) = 0 (type AII)."""
    pr = P.pr
    return dadd(P.Z(a, i, i, j, j, 2 * r - 1), P.Z(a, pr(i), pr(i), pr(j), pr(j), 2 * r - 1)), {}


def za2(P, a, i, j, k, l, r):
    th, pr = P.th, P.pr
    lhs = dscale(P.Z(a, pr(j), l, k, pr(i), 2 * r - 1), mpq(th(i) * th(j)))
    _add(lhs, P.Z(a, pr(l), j, i, pr(k), 2 * r - 1), mpq(th(k) * th(l)))
    return lhs, {}


RELATIONS = {
    "pr1": pr1, "pr2": pr2, "pr3": pr3, "pr4": pr4, "pr5": pr5, "pr6": pr6, "pr7": pr7,
    "pr-1": pr_serre1, "pr-2": pr_serre2,
    "pr-1-2-better-a": pr_serre_fin1, "pr-1-2-better-b": pr_serre_fin2,
    "Zs": zs, "Zshifted": zs, "Zshifteda2": zs_a2, "Za2": za2,
}

AI_FAMILIES = ["pr1", "pr2", "pr3", "pr4", "pr5", "pr6", "pr7", "pr-1", "pr-2",
               "pr-1-2-better-a", "pr-1-2-better-b", "Zs"]
AII_FAMILIES = ["pr1", "pr2", "pr3", "pr4", "pr5", "pr6", "pr7", "pr-1", "pr-2",
                "pr-1-2-better-a", "pr-1-2-better-b", "Za2", "Zshifteda2"]


def default_families(sign: str) -> list:
    return list(AI_FAMILIES if sign == AI else AII_FAMILIES)


# -- instance enumeration ---------------------------------------------------------

def _rng(m):
    return range(1, m + 1)


def instances(name: str, P, bound: int, serre_bound: int | None = None,
              shifted_z: bool = False) -> Iterator[dict]:
    """Admissible index assignments for one family.

    ``bound`` caps the largest superscript sum on the left-hand side
    (r + s for brackets, r for single generators); ``serre_bound`` caps
    s + r1 + r2.  B superscripts always exceed the shifts of ``P``.
    With ``shifted_z`` the Z-families are restricted to 2r-1 <= 2 s_{a+1,a}.
    """
    mu, n = P.mu, P.n
    sb = serre_bound if serre_bound is not None else bound - 1
    lo = lambda a: P.shift(a + 1, a) + 1  # first B level
    if name == "pr1":
        for i in _rng(mu[0]):
            for r in range(1, (bound + 1) // 2 + 1):
                yield dict(i=i, r=r)
    elif name == "pr2":
        for a in _rng(n):
            for i, j in itertools.product(_rng(mu[a - 1]), repeat=2):
                for r in range(0, bound + 1):
                    yield dict(a=a, i=i, j=j, r=r)
    elif name == "pr3":
        for a, b in itertools.product(_rng(n), repeat=2):
            for i, j in itertools.product(_rng(mu[a - 1]), repeat=2):
                for k, l in itertools.product(_rng(mu[b - 1]), repeat=2):
                    for r in range(1, bound):
                        for s in range(1, bound - r + 1):
                            yield dict(a=a, i=i, j=j, b=b, k=k, l=l, r=r, s=s)
    elif name == "pr4":
        for a in _rng(n):
            for b in range(1, n):
                for i, j in itertools.product(_rng(mu[a - 1]), repeat=2):
                    for k in _rng(mu[b]):
                        for l in _rng(mu[b - 1]):
                            for r in range(1, bound):
                                for s in range(lo(b), bound - r + 1):
                                    yield dict(a=a, i=i, j=j, b=b, k=k, l=l, r=r, s=s)
    elif name == "pr5":
        for a, b in itertools.product(range(1, n), repeat=2):
            if not (abs(a - b) > 1 or b == a + 1):
                continue
            for i in _rng(mu[a]):
                for j in _rng(mu[a - 1]):
                    for k in _rng(mu[b]):
                        for l in _rng(mu[b - 1]):
                            if b == a + 1 and i == l:
                                continue
                            for r in range(lo(a), bound):
                                for s in range(lo(b), bound - r + 1):
                                    yield dict(a=a, i=i, j=j, b=b, k=k, l=l, r=r, s=s)
    elif name == "pr6":
        for a in range(1, n):
            for i, k in itertools.product(_rng(mu[a]), repeat=2):
                for j, l in itertools.product(_rng(mu[a - 1]), repeat=2):
                    for r in range(lo(a), bound):
                        for s in range(lo(a), bound - r + 1):
                            yield dict(a=a, i=i, j=j, k=k, l=l, r=r, s=s)
    elif name == "pr7":
        for a in range(1, n - 1):
            for i in _rng(mu[a]):
                for j in _rng(mu[a - 1]):
                    for k in _rng(mu[a + 1]):
                        for l in _rng(mu[a]):
                            for r in range(lo(a), bound):
                                for s in range(lo(a + 1), bound - r):
                                    yield dict(a=a, i=i, j=j, k=k, l=l, r=r, s=s)
    elif name in ("pr-1", "pr-2"):
        for a in range(1, n - 1):
            if name == "pr-1":
                # B_{a;i,j}, B_{a+1;k,l}, B_{a+1;f,g}
                ranges = [mu[a], mu[a - 1], mu[a + 1], mu[a], mu[a + 1], mu[a]]
                xl, yl = lo(a), lo(a + 1)
            else:
                # B_{a+1;i,j}, B_{a;k,l}, B_{a;f,g}
                ranges = [mu[a + 1], mu[a], mu[a], mu[a - 1], mu[a], mu[a - 1]]
                xl, yl = lo(a + 1), lo(a)
            for i, j, k, l, f, g in itertools.product(*[_rng(m) for m in ranges]):
                if mu[a] > 1:
                    if name == "pr-1" and i == g:
                        continue
                    if name == "pr-2" and j == f:
                        continue
                for s in range(xl, sb + 1):
                    for r1 in range(yl, sb - s + 1):
                        for r2 in range(r1, sb - s - r1 + 1):
                            yield dict(a=a, i=i, j=j, k=k, l=l, f=f, g=g, s=s, r1=r1, r2=r2)
    elif name in ("pr-1-2-better-a", "pr-1-2-better-b"):
        if any(lo(a) > 1 for a in range(1, n)):
            return
        for a in range(1, n - 1):
            if name.endswith("a"):
                ranges = [mu[a + 1], mu[a], mu[a], mu[a - 1], mu[a], mu[a - 1]]
            else:
                ranges = [mu[a], mu[a - 1], mu[a + 1], mu[a], mu[a + 1], mu[a]]
            for i, j, k, l, f, g in itertools.product(*[_rng(m) for m in ranges]):
                yield dict(a=a, i=i, j=j, k=k, l=l, f=f, g=g)
    elif name in ("Zs", "Zshifted", "Zshifteda2"):
        for a in range(1, n):
            top = P.shift(a + 1, a) if (shifted_z or name != "Zs") and P.sigma is not None else None
            rmax = (bound + 1) // 2 if top is None else min(top, (bound + 1) // 2)
            for i in _rng(mu[a - 1]):
                for j in _rng(mu[a]):
                    for r in range(1, rmax + 1):
                        yield dict(a=a, i=i, j=j, r=r)
    elif name == "Za2":
        for a in range(1, n):
            for j, l in itertools.product(_rng(mu[a - 1]), repeat=2):
                for i, k in itertools.product(_rng(mu[a]), repeat=2):
                    for r in range(1, (bound + 1) // 2 + 1):
                        yield dict(a=a, i=i, j=j, k=k, l=l, r=r)
    else:
        raise KeyError(f"unknown relation {name!r}")


def check(name: str, P, assignment: dict) -> Report:
    t0 = time.perf_counter()
    fn = RELATIONS[name]
    lhs, rhs = fn(P, **assignment)
    diff = dadd(lhs, rhs, -ONE)
    dt = time.perf_counter() - t0
    if diff:
        return Report(name, dict(assignment), "fail", NCPoly(P.ctx, diff), dt)
    return Report(name, dict(assignment), "pass", None, dt)


def run_suite(P, families, bound: int, serre_bound: int | None = None,
              shifted_z: bool = False, progress=None) -> list:
    """Check every instance; a family with no admissible instance yields a
    single "skipped" row."""
    out = []
    for name in families:
        any_inst = False
        for asg in instances(name, P, bound, serre_bound, shifted_z):
            any_inst = True
            rep = check(name, P, asg)
            out.append(rep)
            if progress:
                progress(rep)
        if not any_inst:
            out.append(Report(name, {"shape": list(P.mu)}, "skipped",
                              note="no admissible index assignment"))
    return out


def summarize(reports) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        out[r.status] += 1
    return out


# -- the Drinfeld-type presentation -----------------------------------------------

class DrinfeldImages:
    """Images of h_{i,r}, b_{j,r} in a realization with shape (1^N)."""

    def __init__(self, P):
        if any(m != 1 for m in P.mu):
            raise ValueError("the Drinfeld generators need the shape (1^N)")
        self.P = P
        self.N = P.n

    def h(self, i, r) -> dict:
        if r == -1:
            return {(): ONE}
        if r < -1:
            return {}
        if i == 0:
            return self.P.H(1, 1, 1, r + 1)
        return self.P.Z(i, 1, 1, 1, 1, r + 1)

    def b(self, j, r) -> dict:
        return self.P.B(j, 1, 1, r + 1)

    def c(self, i, j) -> int:
        if i == 0:
            return -1 if j == 1 else 0
        if i == j:
            return 2
        return -1 if abs(i - j) == 1 else 0


def _anti(P, x, y):
    return dadd(P.mul(x, y), P.mul(y, x))


def drs1(D, i, j, r, s):
    P = D.P
    return P.bracket(D.h(i, r), D.h(j, s)), {}


def drs1_even(D, i, r):
    return D.h(i, 2 * r), {}


def drs2(D, i, j, r, s):
    P = D.P
    c = D.c(i, j)
    lhs = dadd(P.bracket(D.h(i, r + 1), D.b(j, s)), P.bracket(D.h(i, r - 1), D.b(j, s + 2)), -ONE)
    rhs = dscale(_anti(P, D.h(i, r - 1), D.b(j, s + 1)), mpq(c))
    _add(rhs, P.bracket(D.h(i, r - 1), D.b(j, s)), mpq(c * c, 4))
    return lhs, rhs


def drs3(D, i, j, r, s):
    P = D.P
    c = D.c(i, j)
    lhs = dadd(P.bracket(D.b(i, r + 1), D.b(j, s)), P.bracket(D.b(i, r), D.b(j, s + 1)), -ONE)
    rhs = dscale(_anti(P, D.b(i, r), D.b(j, s)), mpq(c, 2))
    if i == j:
        _add(rhs, D.h(i, r + s + 1), mpq(-2 * (-1) ** r))
    return lhs, rhs


def drs4(D, i, j, r, s):
    return D.P.bracket(D.b(i, r), D.b(j, s)), {}


def _drs5_rhs(D, i, j, k1, k2, r):
    P = D.P
    out: dict = {}
    p = 0
    while k1 + k2 - 2 * p - 1 >= -1:
        h = D.h(i, k1 + k2 - 2 * p - 1)
        term = dadd(P.bracket(h, D.b(j, r + 1)), _anti(P, h, D.b(j, r)), -ONE)
        _add(out, term, mpq((-1) ** k1, 4 ** p))
        p += 1
    return out


def drs5(D, i, j, k1, k2, r):
    """Sym over (k1, k2) of [b_{i,k1}, [b_{i,k2}, b_{j,r}]], i.e. the sum of
    both orderings; the right side is already symmetric in k1, k2."""
    br = D.P.bracket
    lhs = dadd(br(D.b(i, k1), br(D.b(i, k2), D.b(j, r))),
               br(D.b(i, k2), br(D.b(i, k1), D.b(j, r))))
    return lhs, _drs5_rhs(D, i, j, k1, k2, r)


DRINFELD = {"drs1": drs1, "drs1-even": drs1_even, "drs2": drs2, "drs3": drs3,
            "drs4": drs4, "drs5": drs5}


def drinfeld_instances(name: str, N: int, bound: int) -> Iterator[dict]:
    """Assignments whose left-hand side only involves h_{i,r}, b_{j,r} with
    r <= bound."""
    R = range(0, bound + 1)
    if name == "drs1":
        for i, j in itertools.product(range(N), repeat=2):
            for r, s in itertools.product(R, repeat=2):
                yield dict(i=i, j=j, r=r, s=s)
    elif name == "drs1-even":
        for i in range(N):
            for r in range(0, bound // 2 + 1):
                yield dict(i=i, r=r)
    elif name == "drs2":
        for i in range(N):
            for j in range(1, N):
                for r in range(0, bound):
                    for s in range(0, bound - 1):
                        yield dict(i=i, j=j, r=r, s=s)
    elif name == "drs3":
        for i, j in itertools.product(range(1, N), repeat=2):
            for r, s in itertools.product(range(0, bound), repeat=2):
                yield dict(i=i, j=j, r=r, s=s)
    elif name == "drs4":
        for i, j in itertools.product(range(1, N), repeat=2):
            if abs(i - j) > 1:
                for r, s in itertools.product(R, repeat=2):
                    yield dict(i=i, j=j, r=r, s=s)
    elif name == "drs5":
        for i, j in itertools.product(range(1, N), repeat=2):
            if abs(i - j) == 1:
                for k1 in R:
                    for k2 in range(k1, bound + 1):
                        for r in range(0, bound):
                            yield dict(i=i, j=j, k1=k1, k2=k2, r=r)
    else:
        raise KeyError(name)


def drinfeld_check(name: str, D: DrinfeldImages, assignment: dict) -> Report:
    t0 = time.perf_counter()
    lhs, rhs = DRINFELD[name](D, **assignment)
    diff = dadd(lhs, rhs, -ONE)
    dt = time.perf_counter() - t0
    if diff:
        return Report(name, dict(assignment), "fail", NCPoly(D.P.ctx, diff), dt)
    return Report(name, dict(assignment), "pass", None, dt)


def run_drinfeld(D: DrinfeldImages, bound: int) -> list:
    out = []
    for name in DRINFELD:
        found = False
        for asg in drinfeld_instances(name, D.N, bound):
            found = True
            out.append(drinfeld_check(name, D, asg))
        if not found:
            out.append(Report(name, {"N": D.N}, "skipped", note="no admissible index assignment"))
    return out
