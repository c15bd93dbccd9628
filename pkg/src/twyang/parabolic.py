"""Parabolic generators H, H~, B, C, Z, B_{b,a} attached to a composition.

A *realization* is anything that can produce the series ``H_a(u)`` and
``B_a(u)`` inside some PBW context.  :class:`GaussParabolic` reads them off
a block Gauss decomposition of an S-matrix (in the Yangian, or in a target
algebra after a homomorphism); :class:`GeneratedParabolic` takes images of
H and B from callbacks; :class:`RefinedParabolic` passes to a finer shape.
All derived generators (H~, Z, iterated B) are computed the same way in
every realization, so a relation written once can be checked anywhere.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Sequence

from gmpy2 import mpq

from .conventions import AII, check_sign, prime, theta
from .ncpoly import ONE, ZERO, NCPoly, acc, dadd
from .series import (CutoffError, SeriesMatrix, USeries, gauss_decompose, matrix_inverse,
                     series_substitute)


class Shape:
    """A strict composition mu of N."""

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"shape parts must be positive: {parts}")
        self.parts = parts
        self.n = len(parts)
        self.N = sum(parts)
        # partial sums mu_(0) = 0, ..., mu_(n) = N
        self.psum = [0]
        for p in parts:
            self.psum.append(self.psum[-1] + p)

    @classmethod
    def parse(cls, text: str) -> "Shape":
        return cls([int(x) for x in str(text).replace(" ", "").split(",") if x])

    def __getitem__(self, a: int) -> int:
        """mu_a with a 1-based."""
        return self.parts[a - 1]

    def check(self, sign: str, N: int | None = None) -> "Shape":
        check_sign(sign)
        if N is not None and self.N != N:
            raise ValueError(f"shape {self.parts} does not sum to {N}")
        if sign == AII and any(p % 2 for p in self.parts):
            raise ValueError(f"type AII needs even parts, got {self.parts}")
        return self

    def global_index(self, a: int, i: int) -> int:
        return self.psum[a - 1] + i

    def block_of(self, g: int):
        for a in range(1, self.n + 1):
            if g <= self.psum[a]:
                return a, g - self.psum[a - 1]
        raise ValueError(g)

    def reversed(self) -> "Shape":
        return Shape(tuple(reversed(self.parts)))

    def __eq__(self, other):
        return isinstance(other, Shape) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Shape{self.parts}"


def shifted_coeffs(f: USeries, shift) -> USeries:
    """f(u - shift)."""
    return series_substitute(f, 1, shift)


class ParabolicBase:
    """Common derived generators.  Subclasses implement ``_H_raw`` and
    ``_B_raw`` for levels r >= 1."""

    def __init__(self, ctx, sign: str, shape: Shape, cutoff: int, sigma=None):
        self.ctx = ctx
        self.sign = check_sign(sign)
        self.shape = shape if isinstance(shape, Shape) else Shape(shape)
        self.mu = self.shape.parts
        self.n = self.shape.n
        self.cutoff = cutoff
        self.sigma = sigma
        self._cache: dict = {}

    # conventions on in-block indices
    def th(self, i: int) -> int:
        return theta(self.sign, i)

    def pr(self, i: int) -> int:
        return prime(self.sign, i)

    def shift(self, b: int, a: int) -> int:
        """s_{b,a}(mu) = s_{mu_(b), mu_(a)}."""
        if self.sigma is None:
            return 0
        ps = self.shape.psum
        return self.sigma[ps[b] - 1][ps[a] - 1]

    # -- raw accessors ---------------------------------------------------------

    def _H_raw(self, a, i, j, r) -> dict:
        raise NotImplementedError

    def _B_raw(self, a, i, j, r) -> dict:
        raise NotImplementedError

    def _memo(self, key, fn):
        v = self._cache.get(key)
        if v is None:
            v = fn()
            self._cache[key] = v
        return v

    def _level(self, r: int):
        if r > self.cutoff:
            raise CutoffError(f"level {r} beyond cutoff {self.cutoff}")

    def _blk(self, a, *idx):
        if not 1 <= a <= self.n:
            raise ValueError(f"block {a} out of range for {self.mu}")
        for i in idx:
            if not 1 <= i <= self.mu[a - 1]:
                raise ValueError(f"index {i} out of range for block {a} of {self.mu}")

    def H(self, a, i, j, r) -> dict:
        self._blk(a, i, j)
        if r < 0:
            return {}
        if r == 0:
            return {(): ONE} if i == j else {}
        self._level(r)
        return self._memo(("H", a, i, j, r), lambda: self._H_raw(a, i, j, r))

    def B(self, a, i, j, r) -> dict:
        """B_{a;i,j}^(r), i in block a+1, j in block a."""
        if not 1 <= a < self.n:
            raise ValueError(f"B index {a} out of range for {self.mu}")
        self._blk(a + 1, i)
        self._blk(a, j)
        if r <= 0:
            return {}
        self._level(r)
        return self._memo(("B", a, i, j, r), lambda: self._B_raw(a, i, j, r))

    def H_series(self, a) -> SeriesMatrix:
        def build():
            m = self.mu[a - 1]
            return SeriesMatrix([[USeries(self.ctx, [self.H(a, i, j, r) for r in range(self.cutoff + 1)])
                                  for j in range(1, m + 1)] for i in range(1, m + 1)])
        return self._memo(("Hser", a), build)

    def Ht_series(self, a) -> SeriesMatrix:
        return self._memo(("Htser", a), lambda: matrix_inverse(self.H_series(a)))

    def Ht(self, a, i, j, r) -> dict:
        self._blk(a, i, j)
        if r < 0:
            return {}
        if r == 0:
            return {(): ONE} if i == j else {}
        self._level(r)
        return self.Ht_series(a)[i - 1, j - 1][r]

    def Z(self, a, i, j, k, l, r) -> dict:
        """Z_{a;i,j,k,l}^(r): coefficient of H~_{a;i,j}(u - mu_a/2) H_{a+1;k,l}(u)."""
        if not 1 <= a < self.n:
            raise ValueError(f"Z index {a} out of range for {self.mu}")
        self._blk(a, i, j)
        self._blk(a + 1, k, l)
        if r < 0:
            return {}
        self._level(r)

        def build():
            c = mpq(self.mu[a - 1], 2)
            out: dict = {}
            for t in range(r + 1):
                for m in range(r - t + 1):
                    if t == 0:
                        w = ONE if m == 0 else ZERO
                    else:
                        w = comb(t + m - 1, m) * c ** m
                    if not w:
                        continue
                    x, y = self.Ht(a, i, j, t), self.H(a + 1, k, l, r - t - m)
                    if x and y:
                        for ww, cc in self.ctx.mul(x, y).items():
                            acc(out, ww, w * cc)
            return out
        return self._memo(("Z", a, i, j, k, l, r), build)

    def Bba(self, b, a, i, j, r, k: int = 1) -> dict:
        """B_{b,a;i,j}^(r) via iterated brackets with auxiliary index k."""
        if not 1 <= a < b <= self.n:
            raise ValueError(f"bad block pair ({b},{a})")
        self._blk(b, i)
        self._blk(a, j)
        if b == a + 1:
            return self.B(a, i, j, r)
        sb = self.shift(b, b - 1)
        if r - sb <= self.shift(b - 1, a):
            raise ValueError(f"level {r} not above shift {self.shift(b, a)}")

        def build():
            x = self.B(b - 1, i, k, sb + 1)
            y = self.Bba(b - 1, a, k, j, r - sb, k)
            return self.bracket(x, y)
        return self._memo(("Bba", b, a, i, j, r, k), build)

    # -- arithmetic helpers ---------------------------------------------------------

    def mul(self, x: dict, y: dict) -> dict:
        if not x or not y:
            return {}
        return self.ctx.mul(x, y)

    def bracket(self, x: dict, y: dict) -> dict:
        if not x or not y:
            return {}
        return dadd(self.ctx.mul(x, y), self.ctx.mul(y, x), -ONE)

    def poly(self, x: dict) -> NCPoly:
        return NCPoly(self.ctx, x)


class GaussParabolic(ParabolicBase):
    """Parabolic generators read from the Gauss decomposition of an S-matrix."""

    def __init__(self, S: SeriesMatrix, sign: str, shape, cutoff: int | None = None, sigma=None):
        shape = shape if isinstance(shape, Shape) else Shape(shape)
        if cutoff is None:
            cutoff = S.cutoff
        if S.cutoff > cutoff:
            S = S.map(lambda f: f.truncate(cutoff))
        super().__init__(S.ctx, sign, shape, cutoff, sigma)
        self.S = S
        self.gauss = gauss_decompose(S, shape.parts)

    def _shifted(self, kind, a, b=None):
        def build():
            ps = self.shape.psum
            if kind == "H":
                M, c = self.gauss.D[a - 1], ps[a - 1]
            elif kind == "Ht":
                M, c = self.gauss.Dt[a - 1], ps[a - 1]
            elif kind == "F":      # F_{b,a} shifted by mu_(a)/2
                M, c = self.gauss.F[(b - 1, a - 1)], ps[a]
            else:                  # E_{a,b} shifted by mu_(a)/2
                M, c = self.gauss.E[(a - 1, b - 1)], ps[a]
            return M.map(lambda f: shifted_coeffs(f, mpq(c, 2)))
        return self._memo(("shifted", kind, a, b), build)

    def _H_raw(self, a, i, j, r):
        return self._shifted("H", a)[i - 1, j - 1][r]

    def Ht_series(self, a):
        return self._shifted("Ht", a)

    def _B_raw(self, a, i, j, r):
        return self._shifted("F", a, a + 1)[i - 1, j - 1][r]

    def Bba_direct(self, b, a, i, j, r) -> dict:
        """B_{b,a;i,j}^(r) = coefficient of F_{b,a;i,j}(u - mu_(a)/2)."""
        self._blk(b, i)
        self._blk(a, j)
        self._level(r)
        return self._shifted("F", a, b)[i - 1, j - 1][r]

    def C(self, a, i, j, r) -> dict:
        """C_{a;i,j}^(r), i in block a, j in block a+1."""
        return self.Cab(a, a + 1, i, j, r)

    def Cab(self, a, b, i, j, r) -> dict:
        self._blk(a, i)
        self._blk(b, j)
        self._level(r)
        return self._shifted("E", a, b)[i - 1, j - 1][r]

    def D(self, a, i, j, r) -> dict:
        return self.gauss.D[a - 1][i - 1, j - 1][r]

    def Dt(self, a, i, j, r) -> dict:
        return self.gauss.Dt[a - 1][i - 1, j - 1][r]

    def E(self, a, b, i, j, r) -> dict:
        return self.gauss.E[(a - 1, b - 1)][i - 1, j - 1][r]

    def F(self, b, a, i, j, r) -> dict:
        return self.gauss.F[(b - 1, a - 1)][i - 1, j - 1][r]


class GeneratedParabolic(ParabolicBase):
    """Parabolic data given by images of the H and B generators."""

    def __init__(self, ctx, sign, shape, cutoff, H_fn: Callable, B_fn: Callable, sigma=None):
        super().__init__(ctx, sign, shape, cutoff, sigma)
        self._H_fn, self._B_fn = H_fn, B_fn

    def _H_raw(self, a, i, j, r):
        return self._H_fn(a, i, j, r)

    def _B_raw(self, a, i, j, r):
        return self._B_fn(a, i, j, r)


class RefinedParabolic(ParabolicBase):
    """Generators for a refinement ``nu`` of the shape of ``base``.

    Inside each block of the coarse shape the matrix D(v) = H(v + c/2) is
    Gauss-decomposed again; a B crossing a coarse boundary is a sub-block
    of the coarse B.
    """

    def __init__(self, base: ParabolicBase, nu, sigma=None):
        nu = nu if isinstance(nu, Shape) else Shape(nu)
        super().__init__(base.ctx, base.sign, nu, base.cutoff,
                         base.sigma if sigma is None else sigma)
        self.base = base
        # map each fine block to (coarse block, first fine block in it, offset inside coarse block)
        coarse = base.shape
        self.parent = {}
        if set(coarse.psum) - set(nu.psum):
            raise ValueError(f"{nu.parts} does not refine {coarse.parts}")
        for k in range(1, nu.n + 1):
            start = nu.psum[k - 1]
            a, _ = coarse.block_of(start + 1)
            self.parent[k] = (a, start - coarse.psum[a - 1])
        self._inner: dict = {}

    def _inner_gauss(self, a):
        def build():
            coarse = self.base.shape
            c = mpq(coarse.psum[a - 1], 2)
            X = self.base.H_series(a).map(lambda f: series_substitute(f, 1, -c))
            sub = [self.shape[k] for k in range(1, self.n + 1) if self.parent[k][0] == a]
            return gauss_decompose(X, sub)
        return self._memo(("inner", a), build)

    def _first_fine(self, a):
        return min(k for k in self.parent if self.parent[k][0] == a)

    def _H_raw(self, k, i, j, r):
        a, _ = self.parent[k]
        g = self._inner_gauss(a)
        kk = k - self._first_fine(a)
        c = mpq(self.shape.psum[k - 1], 2)
        f = self._memo(("Hsh", k), lambda: g.D[kk].map(lambda s: shifted_coeffs(s, c)))
        return f[i - 1, j - 1][r]

    def _B_raw(self, k, i, j, r):
        a, off = self.parent[k]
        a2, off2 = self.parent[k + 1]
        if a == a2:
            g = self._inner_gauss(a)
            kk = k - self._first_fine(a)
            c = mpq(self.shape.psum[k], 2)
            f = self._memo(("Bsh", k), lambda: g.F[(kk + 1, kk)].map(lambda s: shifted_coeffs(s, c)))
            return f[i - 1, j - 1][r]
        # crossing a coarse boundary: rows at the top of block a2, columns at the bottom of block a
        return self.base.B(a, off2 + i, off + j, r)
