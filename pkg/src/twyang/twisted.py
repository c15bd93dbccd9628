"""Twisted Yangians of types AI and AII realized inside Y(gl_N).

The generator ``s_ij^(r)`` is sent to
``sum_a sum_{p+q=r} theta_a theta_i (-1)^p t_{a'i'}^(p) t_{aj}^(q)``,
the coideal form of ``S(u) = T^t(-u) G T(u)`` (see :func:`embed_s`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

from gmpy2 import mpq

from .conventions import AI, AII, check_sign, gmatrix, prime, theta
from .ncpoly import ONE, NCPoly, YangianCtx, acc, dadd, dscale
from .series import (SeriesMatrix, USeries, gamma_series, matrix_inverse, series_mul,
                     series_substitute)


@dataclass
class Report:
    """Outcome of one verification instance."""
    relation: str
    assignment: dict
    status: str                      # "pass", "fail" or "skipped"
    witness: Any = None              # NCPoly (difference) on failure
    seconds: float = 0.0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, NCPoly):
            w = w.to_json()
        out = {"relation": self.relation, "assignment": self.assignment,
               "status": self.status, "witness": w,
               "seconds": round(self.seconds, 4)}
        if self.note:
            out["note"] = self.note
        return out


def compare(relation: str, assignment: dict, lhs: NCPoly, rhs: NCPoly, note: str = "") -> Report:
    diff = lhs - rhs
    if diff.is_zero():
        return Report(relation, assignment, "pass", note=note)
    return Report(relation, assignment, "fail", witness=diff, note=note)


class TwistedCtx:
    """Sign type, rank and the Yangian that hosts the embedding."""

    def __init__(self, sign: str, N: int, yangian: YangianCtx | None = None):
        check_sign(sign)
        if N < 1:
            raise ValueError("N must be positive")
        if sign == AII and N % 2:
            raise ValueError("type AII needs even N")
        self.sign, self.N = sign, N
        self.Y = yangian if yangian is not None else YangianCtx(N)
        if self.Y.N != N:
            raise ValueError("Yangian rank does not match N")
        self._s: dict = {}
        self._S: SeriesMatrix | None = None

    def theta(self, i: int) -> int:
        return theta(self.sign, i)

    def prime(self, i: int) -> int:
        return prime(self.sign, i)

    @property
    def G(self):
        return gmatrix(self.sign, self.N)

    def __repr__(self):
        return f"TwistedCtx({self.sign}, N={self.N})"

    # -- embedding ------------------------------------------------------------

    def s(self, i: int, j: int, r: int) -> dict:
        """Raw Yangian element for s_ij^(r) (r = 0 gives delta)."""
        N = self.N
        if not (1 <= i <= N and 1 <= j <= N) or r < 0:
            raise ValueError(f"s[{i},{j};{r}] out of range for N={N}")
        if r == 0:
            return {(): ONE} if i == j else {}
        key = (i, j, r)
        out = self._s.get(key)
        if out is not None:
            return out
        Y = self.Y
        out = {}
        ip = self.prime(i)
        for a in range(1, N + 1):
            c0 = self.theta(a) * self.theta(i)
            ap = self.prime(a)
            for p in range(r + 1):
                c = mpq(c0 * (-1) ** p)
                for w, cc in Y.mul(Y.t(ap, ip, p), Y.t(a, j, r - p)).items():
                    acc(out, w, c * cc)
        self._s[key] = out
        return out

    def S_matrix(self, cutoff: int) -> SeriesMatrix:
        if self._S is None or self._S.cutoff < cutoff:
            self._S = SeriesMatrix([[USeries(self.Y, [self.s(i, j, r) for r in range(cutoff + 1)])
                                     for j in range(1, self.N + 1)]
                                    for i in range(1, self.N + 1)])
        if self._S.cutoff == cutoff:
            return self._S
        return self._S.map(lambda f: f.truncate(cutoff))


def embed_s(i: int, j: int, r: int, tctx: TwistedCtx) -> NCPoly:
    return NCPoly(tctx.Y, tctx.s(i, j, r))


# -- defining relations ---------------------------------------------------------

def _sp(tctx, i, j, r) -> dict:
    return tctx.s(i, j, r) if r >= 0 else {}


def _bil(tctx, a: dict, b: dict) -> dict:
    return tctx.Y.mul(a, b) if a and b else {}


def quaternary_sides(i, j, k, l, r, s, tctx: TwistedCtx):
    """Both sides of the u^-r v^-s coefficient of the quaternary relation
    after clearing the factor (u^2 - v^2); r, s >= -1."""
    Y = tctx.Y
    th, pr = tctx.theta, tctx.prime
    sp = lambda a, b, n: _sp(tctx, a, b, n)

    def br(a, b):
        return dadd(_bil(tctx, a, b), _bil(tctx, b, a), -ONE)

    lhs = dadd(br(sp(i, j, r + 2), sp(k, l, s)), br(sp(i, j, r), sp(k, l, s + 2)), -ONE)

    def X(a, b):
        return dadd(_bil(tctx, sp(k, j, a), sp(i, l, b)), _bil(tctx, sp(k, j, b), sp(i, l, a)), -ONE)

    def Yt(a, b):
        c1 = th(k) * th(pr(j))
        c2 = th(i) * th(pr(l))
        x = dscale(_bil(tctx, sp(i, pr(k), a), sp(pr(j), l, b)), mpq(c1))
        return dadd(x, _bil(tctx, sp(k, pr(i), b), sp(pr(l), j, a)), mpq(-c2))

    def Zt(a, b):
        c = mpq(th(i) * th(pr(j)))
        x = dadd(_bil(tctx, sp(k, pr(i), a), sp(pr(j), l, b)),
                 _bil(tctx, sp(k, pr(i), b), sp(pr(j), l, a)), -ONE)
        return dscale(x, c)

    rhs = dadd(X(r + 1, s), X(r, s + 1))
    rhs = dadd(rhs, dadd(Yt(r + 1, s), Yt(r, s + 1), -ONE), -ONE)
    rhs = dadd(rhs, Zt(r, s))
    return NCPoly(Y, lhs), NCPoly(Y, rhs)


def check_quaternary(i, j, k, l, r, s, tctx: TwistedCtx) -> Report:
    lhs, rhs = quaternary_sides(i, j, k, l, r, s, tctx)
    return compare("qua", {"i": i, "j": j, "k": k, "l": l, "r": r, "s": s}, lhs, rhs)


def symmetry_sides(i, j, r, tctx: TwistedCtx):
    """u^-r coefficient of the symmetry relation."""
    Y = tctx.Y
    c = mpq(tctx.theta(i) * tctx.theta(j) * (-1) ** r)
    lhs = dscale(tctx.s(tctx.prime(j), tctx.prime(i), r), c)
    rhs = dict(tctx.s(i, j, r))
    if r >= 1 and r % 2 == 0:
        sgn = ONE if tctx.sign == AI else -ONE
        rhs = dadd(rhs, tctx.s(i, j, r - 1), sgn)
    return NCPoly(Y, lhs), NCPoly(Y, rhs)


def check_symmetry(i, j, r, tctx: TwistedCtx) -> Report:
    lhs, rhs = symmetry_sides(i, j, r, tctx)
    return compare("sym", {"i": i, "j": j, "r": r}, lhs, rhs)


# -- determinants -----------------------------------------------------------------

def _t_series(Y: YangianCtx, i, j, cutoff) -> USeries:
    return USeries(Y, [Y.t(i, j, r) for r in range(cutoff + 1)])


def _perm_sign(p) -> int:
    sgn, p = 1, list(p)
    for a in range(len(p)):
        while p[a] != a:
            b = p[a]
            p[a], p[b] = p[b], p[a]
            sgn = -sgn
    return sgn


def qdet(N_or_ctx, cutoff: int, eps: int = 1, shift=0) -> USeries:
    """qdet T(eps*u - shift) in Y(gl_N) (default: qdet T(u))."""
    Y = N_or_ctx if isinstance(N_or_ctx, YangianCtx) else YangianCtx(N_or_ctx)
    N = Y.N
    cols = []
    for c in range(N):
        # column c+1 uses t(u - c), composed with the outer substitution
        cols.append({i: series_substitute(_t_series(Y, i + 1, c + 1, cutoff), eps,
                                          mpq(shift) + c)
                     for i in range(N)})
    total = None
    for p in itertools.permutations(range(N)):
        f = cols[0][p[0]]
        for c in range(1, N):
            f = series_mul(f, cols[c][p[c]])
        f = f.scale(_perm_sign(p))
        total = f if total is None else total + f
    return total


def sdet(tctx: TwistedCtx, cutoff: int) -> USeries:
    """Sklyanin determinant gamma_N(u) qdet T(u) qdet T(-u+N-1)."""
    N, Y = tctx.N, tctx.Y
    g = gamma_series(N, tctx.sign, cutoff, Y)
    return series_mul(series_mul(g, qdet(Y, cutoff)), qdet(Y, cutoff, eps=-1, shift=-(N - 1)))


def centrality_check(z: NCPoly, tctx: TwistedCtx, level_bound: int, label: str = "central") -> Report:
    """[z, s_ij^(r)] = 0 for all i, j and 1 <= r <= level_bound."""
    Y = tctx.Y
    for r in range(1, level_bound + 1):
        for i in range(1, tctx.N + 1):
            for j in range(1, tctx.N + 1):
                x = NCPoly(Y, tctx.s(i, j, r))
                c = z.bracket(x)
                if not c.is_zero():
                    return Report(label, {"i": i, "j": j, "r": r}, "fail", witness=c)
    return Report(label, {"level_bound": level_bound}, "pass")


# -- tau and zeta ------------------------------------------------------------------

def apply_tau(p: NCPoly, tctx: TwistedCtx) -> NCPoly:
    """The anti-automorphism tau, realized on Y(gl_N) by t_ij(u) -> t_ij(-u)
    taken anti-multiplicatively."""
    Y = p.ctx
    if Y is not tctx.Y:
        raise ValueError("element does not live in the ambient Yangian")
    out: dict = {}
    for w, c in p.terms.items():
        sgn = 1
        for g in w:
            if Y.level(g) % 2:
                sgn = -sgn
        for w2, c2 in Y.normal_form_word(tuple(reversed(w))).items():
            acc(out, w2, sgn * c * c2)
    return NCPoly(Y, out)


def zeta_matrix(tctx: TwistedCtx, cutoff: int) -> SeriesMatrix:
    """The matrix (zeta_N(s_ij(u))) = (s~_{N+1-i, N+1-j}(-u - N/2)); type AI only."""
    if tctx.sign != AI:
        raise NotImplementedError("zeta_N is only available in type AI")
    N = tctx.N
    St = matrix_inverse(tctx.S_matrix(cutoff))
    half = mpq(N, 2)
    return SeriesMatrix([[series_substitute(St[N - i, N - j], -1, half)
                          for j in range(1, N + 1)] for i in range(1, N + 1)])


def apply_zeta_s(i: int, j: int, r: int, tctx: TwistedCtx, cutoff: int | None = None) -> NCPoly:
    """zeta_N(s_ij^(r)) as an element of Y(gl_N) (type AI)."""
    M = zeta_matrix(tctx, max(r, cutoff or 0))
    return M[i - 1, j - 1].coeff(r)


def _rt_scalar(k: int, D: int) -> list:
    # coefficients of 1/(2u - k) in u^-1
    return [mpq(0)] + [mpq(k) ** (n - 1) / mpq(2) ** n for n in range(1, D + 1)]


def fused_sdet(M: SeriesMatrix, sign: str) -> USeries:
    """Sklyanin determinant of an m x m matrix series with entries in any
    context, read off from the fused product
    S_1(u) R^t_12 ... R^t_1m S_2(u-1) ... S_m(u-m+1) on the antisymmetric
    line, with R^t_pq = 1 - Q_pq / (-u_p - u_q) and
    Q = sum theta_i theta_j E_ij (x) E_i'j'."""
    check_sign(sign)
    m, ctx, D = M.rows, M.ctx, M.cutoff
    th = lambda i: theta(sign, i)
    pr = lambda i: prime(sign, i)
    Sp = [M.map(lambda f, p=p: series_substitute(f, 1, p)) for p in range(m)]
    one = USeries.one(ctx, D)
    # A X = sdet A, so sdet is the (1..m)-column of X summed against A
    v = {tuple(range(1, m + 1)): one}

    def add(out, key, g):
        out[key] = out[key] + g if key in out else g

    def S_times(v, p):
        out: dict = {}
        for b, f in v.items():
            for a in range(1, m + 1):
                add(out, b[:p] + (a,) + b[p + 1:], series_mul(Sp[p][a - 1, b[p] - 1], f))
        return out

    def R_times(v, p, q):
        # Q = sum theta_i theta_j E_ij (x) E_i'j'
        w = USeries.scalars(ctx, _rt_scalar(p + q, D), D)
        out = dict(v)
        for b, f in v.items():
            if b[q] != pr(b[p]):
                continue
            g = series_mul(w, f)
            for a in range(1, m + 1):
                key = list(b)
                key[p], key[q] = a, pr(a)
                add(out, tuple(key), g.scale(th(a) * th(b[p])))
        return out

    for p in reversed(range(m)):
        for q in reversed(range(p + 1, m)):
            v = R_times(v, p, q)
        v = S_times(v, p)
    total = USeries.zero(ctx, D)
    for perm in itertools.permutations(range(1, m + 1)):
        f = v.get(perm)
        if f is not None:
            total = total + f.scale(_perm_sign([x - 1 for x in perm]))
    return total
