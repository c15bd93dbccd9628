"""Truncated series in u^-1 with noncommutative coefficients.

A :class:`USeries` stores ``c_0, ..., c_D`` (raw dict elements of one
context).  Asking for a coefficient past the cutoff ``D`` raises
:class:`CutoffError`; results of arithmetic carry the smaller cutoff.
"""

from __future__ import annotations

from math import comb
from typing import Mapping, Sequence

from gmpy2 import mpq

from .ncpoly import ONE, ZERO, AlgebraCtx, ContextMismatch, NCPoly, Q, acc, dadd, dscale


class CutoffError(IndexError):
    pass


class USeries:
    __slots__ = ("ctx", "cutoff", "c")

    def __init__(self, ctx: AlgebraCtx, coeffs: Sequence, cutoff: int | None = None):
        coeffs = [x.terms if isinstance(x, NCPoly) else dict(x) for x in coeffs]
        if cutoff is None:
            cutoff = len(coeffs) - 1
        if len(coeffs) < cutoff + 1:
            raise CutoffError(f"{len(coeffs)} coefficients given for cutoff {cutoff}")
        self.ctx = ctx
        self.cutoff = cutoff
        self.c = coeffs[:cutoff + 1]

    @classmethod
    def polynomial(cls, ctx, coeffs: Sequence, cutoff: int) -> "USeries":
        """A series known to vanish past the given coefficients."""
        coeffs = [x.terms if isinstance(x, NCPoly) else dict(x) for x in coeffs]
        coeffs = coeffs + [{}] * max(0, cutoff + 1 - len(coeffs))
        return cls(ctx, coeffs, cutoff)

    @classmethod
    def one(cls, ctx, cutoff: int) -> "USeries":
        return cls.polynomial(ctx, [{(): ONE}], cutoff)

    @classmethod
    def zero(cls, ctx, cutoff: int) -> "USeries":
        return cls.polynomial(ctx, [], cutoff)

    @classmethod
    def scalars(cls, ctx, values: Sequence, cutoff: int | None = None) -> "USeries":
        vals = [Q(v) for v in values]
        if cutoff is None:
            cutoff = len(vals) - 1
        return cls(ctx, [{(): v} if v else {} for v in vals], cutoff)

    def __getitem__(self, r: int) -> dict:
        if r < 0:
            return {}
        if r > self.cutoff:
            raise CutoffError(f"coefficient {r} requested beyond cutoff {self.cutoff}")
        return self.c[r]

    def coeff(self, r: int) -> NCPoly:
        return NCPoly(self.ctx, self[r])

    def truncate(self, D: int) -> "USeries":
        if D > self.cutoff:
            raise CutoffError(f"cannot extend cutoff {self.cutoff} to {D}")
        return USeries(self.ctx, self.c[:D + 1], D)

    def _check(self, other: "USeries"):
        if other.ctx is not self.ctx:
            raise ContextMismatch(f"{self.ctx.ctx_id} vs {other.ctx.ctx_id}")

    def __add__(self, other: "USeries") -> "USeries":
        self._check(other)
        D = min(self.cutoff, other.cutoff)
        return USeries(self.ctx, [dadd(self.c[r], other.c[r]) for r in range(D + 1)], D)

    def __sub__(self, other: "USeries") -> "USeries":
        self._check(other)
        D = min(self.cutoff, other.cutoff)
        return USeries(self.ctx, [dadd(self.c[r], other.c[r], -ONE) for r in range(D + 1)], D)

    def __neg__(self):
        return USeries(self.ctx, [dscale(x, -ONE) for x in self.c], self.cutoff)

    def scale(self, s) -> "USeries":
        s = Q(s)
        return USeries(self.ctx, [dscale(x, s) for x in self.c], self.cutoff)

    def __mul__(self, other: "USeries") -> "USeries":
        return series_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return (self.ctx is other.ctx and self.cutoff == other.cutoff
                and all(a == b for a, b in zip(self.c, other.c)))

    __hash__ = None

    def to_json(self) -> dict:
        return {"cutoff": self.cutoff,
                "coeffs": [NCPoly(self.ctx, x).to_json() for x in self.c]}

    @classmethod
    def from_json(cls, data: Mapping, ctx) -> "USeries":
        return cls(ctx, [NCPoly.from_json(x, ctx) for x in data["coeffs"]], data["cutoff"])

    def __repr__(self):
        return f"USeries({self.ctx.ctx_id}, D={self.cutoff}, " + \
            ", ".join(repr(NCPoly(self.ctx, x)) for x in self.c) + ")"


def series_mul(f: USeries, g: USeries) -> USeries:
    f._check(g)
    ctx = f.ctx
    D = min(f.cutoff, g.cutoff)
    out = []
    for r in range(D + 1):
        acc_r: dict = {}
        for s in range(r + 1):
            a, b = f.c[s], g.c[r - s]
            if a and b:
                for w, c in ctx.mul(a, b).items():
                    acc(acc_r, w, c)
        out.append(acc_r)
    return USeries(ctx, out, D)


def _require_unit(x: dict, what: str):
    if x != {(): ONE}:
        raise ValueError(f"{what}: constant term must be 1")


def series_inverse(f: USeries) -> USeries:
    """g with f g = 1, via g_r = -sum_{t=1}^r f_t g_{r-t}."""
    _require_unit(f.c[0], "series_inverse")
    ctx = f.ctx
    g = [{(): ONE}]
    for r in range(1, f.cutoff + 1):
        x: dict = {}
        for t in range(1, r + 1):
            if f.c[t] and g[r - t]:
                for w, c in ctx.mul(f.c[t], g[r - t]).items():
                    acc(x, w, -c)
        g.append(x)
    return USeries(ctx, g, f.cutoff)


def substitution_weights(eps: int, shift, D: int) -> list:
    """W[n][r]: coefficient of u^-n in eps^-r ... i.e. (eps*u - shift)^-r."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    a = Q(shift) * eps
    W = [[ZERO] * (D + 1) for _ in range(D + 1)]
    W[0][0] = ONE
    for n in range(1, D + 1):
        for r in range(1, n + 1):
            m = n - r
            W[n][r] = mpq(eps ** r) * comb(r + m - 1, m) * a ** m
    return W


def series_substitute(f: USeries, eps: int, shift) -> USeries:
    """f(eps*u - shift), expanded in u^-1."""
    W = substitution_weights(eps, shift, f.cutoff)
    out = []
    for n in range(f.cutoff + 1):
        x: dict = {}
        for r in range(n + 1):
            w = W[n][r]
            if w:
                for k, c in f.c[r].items():
                    acc(x, k, w * c)
        out.append(x)
    return USeries(f.ctx, out, f.cutoff)


def gamma_series(c: int, sign: str, D: int, ctx=None) -> list:
    """Coefficients of gamma_c(u): 1 for AI, (2u+1)/(2u-c+1) for AII."""
    vals = [ONE] + [ZERO] * D
    if sign == "AII":
        b = mpq(c - 1)
        for n in range(1, D + 1):
            vals[n] = (b ** n + b ** (n - 1)) / mpq(2) ** n
    elif sign != "AI":
        raise ValueError(sign)
    if ctx is None:
        return vals
    return USeries.scalars(ctx, vals, D)


# -- matrices --------------------------------------------------------------------

class SeriesMatrix:
    __slots__ = ("rows", "cols", "e")

    def __init__(self, entries: Sequence[Sequence[USeries]]):
        self.e = [list(r) for r in entries]
        self.rows = len(self.e)
        self.cols = len(self.e[0]) if self.e else 0
        if any(len(r) != self.cols for r in self.e):
            raise ValueError("ragged matrix")

    @property
    def ctx(self):
        return self.e[0][0].ctx

    @property
    def cutoff(self) -> int:
        return min(x.cutoff for r in self.e for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.e[i][j]

    def block(self, r0, r1, c0, c1) -> "SeriesMatrix":
        return SeriesMatrix([row[c0:c1] for row in self.e[r0:r1]])

    @classmethod
    def identity(cls, ctx, n: int, cutoff: int) -> "SeriesMatrix":
        return cls([[USeries.one(ctx, cutoff) if i == j else USeries.zero(ctx, cutoff)
                     for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx, m: int, n: int, cutoff: int) -> "SeriesMatrix":
        return cls([[USeries.zero(ctx, cutoff) for _ in range(n)] for _ in range(m)])

    def __add__(self, other):
        return SeriesMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.e, other.e)])

    def __sub__(self, other):
        return SeriesMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.e, other.e)])

    def __mul__(self, other):
        return matrix_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.e == other.e

    __hash__ = None

    def map(self, fn) -> "SeriesMatrix":
        return SeriesMatrix([[fn(x) for x in r] for r in self.e])

    def coeff_matrix(self, r: int) -> list:
        return [[x[r] for x in row] for row in self.e]


def matrix_mul(A: SeriesMatrix, B: SeriesMatrix) -> SeriesMatrix:
    if A.cols != B.rows:
        raise ValueError("shape mismatch")
    out = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            s = None
            for k in range(A.cols):
                term = series_mul(A.e[i][k], B.e[k][j])
                s = term if s is None else s + term
            row.append(s)
        out.append(row)
    return SeriesMatrix(out)


def matrix_inverse(M: SeriesMatrix) -> SeriesMatrix:
    """Two-sided inverse of a square series matrix with identity constant term,
    via G_r = -sum_{a>=1} M_a G_{r-a}."""
    n = M.rows
    if M.cols != n:
        raise ValueError("matrix_inverse needs a square matrix")
    for i in range(n):
        for j in range(n):
            want = {(): ONE} if i == j else {}
            if M.e[i][j][0] != want:
                raise ValueError("matrix_inverse: constant term must be the identity")
    ctx = M.ctx
    D = M.cutoff
    Mc = [M.coeff_matrix(r) for r in range(D + 1)]
    G = [[[{(): ONE} if i == j else {} for j in range(n)] for i in range(n)]]
    for r in range(1, D + 1):
        Gr = [[{} for _ in range(n)] for _ in range(n)]
        for a in range(1, r + 1):
            Ma, Gb = Mc[a], G[r - a]
            for i in range(n):
                for k in range(n):
                    x = Ma[i][k]
                    if not x:
                        continue
                    for j in range(n):
                        y = Gb[k][j]
                        if y:
                            for w, c in ctx.mul(x, y).items():
                                acc(Gr[i][j], w, -c)
        G.append(Gr)
    return SeriesMatrix([[USeries(ctx, [G[r][i][j] for r in range(D + 1)], D)
                          for j in range(n)] for i in range(n)])


def quasideterminant(A: SeriesMatrix, B: SeriesMatrix, C: SeriesMatrix,
                     Dm: SeriesMatrix) -> SeriesMatrix:
    """D - C A^{-1} B."""
    if A.rows != A.cols or B.rows != A.rows or C.cols != A.cols \
            or Dm.rows != C.rows or Dm.cols != B.cols:
        raise ValueError("quasideterminant: shape mismatch")
    return Dm - C * (matrix_inverse(A) * B)


class GaussData:
    """Block Gauss factors of S = F D E.

    ``D[a]``, ``Dt[a]`` are square blocks (0-based block index a);
    ``E[(a, b)]`` (a < b) and ``F[(b, a)]`` are the off-diagonal blocks.
    """

    def __init__(self, shape, D, Dt, E, F):
        self.shape = tuple(shape)
        self.D, self.Dt, self.E, self.F = D, Dt, E, F

    def offsets(self):
        out, s = [], 0
        for m in self.shape:
            out.append(s)
            s += m
        return out

    def full_matrices(self):
        """(F, D, E) as full N x N series matrices."""
        some = self.D[0]
        ctx, D = some.ctx, some.cutoff
        N = sum(self.shape)
        off = self.offsets()
        n = len(self.shape)
        Fm = SeriesMatrix.identity(ctx, N, D).e
        Dm = SeriesMatrix.zeros(ctx, N, N, D).e
        Em = SeriesMatrix.identity(ctx, N, D).e
        for a in range(n):
            for i in range(self.shape[a]):
                for j in range(self.shape[a]):
                    Dm[off[a] + i][off[a] + j] = self.D[a].e[i][j]
            for b in range(a + 1, n):
                for i in range(self.shape[a]):
                    for j in range(self.shape[b]):
                        Em[off[a] + i][off[b] + j] = self.E[(a, b)].e[i][j]
                        Fm[off[b] + j][off[a] + i] = self.F[(b, a)].e[j][i]
        return SeriesMatrix(Fm), SeriesMatrix(Dm), SeriesMatrix(Em)


def gauss_decompose(S: SeriesMatrix, shape) -> GaussData:
    shape = tuple(shape)
    if any(m < 1 for m in shape):
        raise ValueError("shape parts must be positive")
    N = sum(shape)
    if S.rows != N or S.cols != N:
        raise ValueError(f"matrix is {S.rows}x{S.cols}, shape sums to {N}")
    n = len(shape)
    off = [sum(shape[:a]) for a in range(n)]
    cur = {(a, b): S.block(off[a], off[a] + shape[a], off[b], off[b] + shape[b])
           for a in range(n) for b in range(n)}
    D, Dt, E, F = {}, {}, {}, {}
    for a in range(n):
        D[a] = cur[(a, a)]
        Dt[a] = matrix_inverse(D[a])
        for b in range(a + 1, n):
            E[(a, b)] = Dt[a] * cur[(a, b)]
            F[(b, a)] = cur[(b, a)] * Dt[a]
        for b in range(a + 1, n):
            for c in range(a + 1, n):
                cur[(b, c)] = cur[(b, c)] - F[(b, a)] * cur[(a, c)]
    return GaussData(shape, D, Dt, E, F)
