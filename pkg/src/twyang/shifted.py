"""Shift matrices, pyramids, shapes, generator inventories and truncation ideals.

Shifted and truncated algebras are never given their own rewriting system.
Their generators are abstract labels

    ("H", a, i, j, r)        H_{a;i,j}^(r)
    ("B", b, a, i, j, r)     B_{b,a;i,j}^(r)   (b > a)

collected in the free algebra :data:`GENS`; an element such as an ideal
generator is an :class:`NCPoly` over :data:`GENS` and is pushed into any
parabolic realization with :func:`realize`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from gmpy2 import mpq

from .conventions import AI, AII, check_sign
from .ncpoly import ONE, FreeCtx, NCPoly, acc, evaluate
from .parabolic import ParabolicBase, Shape



class _GeneratorCtx(FreeCtx):
    def sym_str(self, gid: int) -> str:
        return label_str(self.labels[gid])


GENS = _GeneratorCtx("parabolic-generators")


# -- shift matrices ------------------------------------------------------------

class ShiftMatrix:
    """A symmetric shift matrix with zero diagonal and the additivity property."""

    def __init__(self, rows: Sequence[Sequence[int]], check: bool = True):
        self.rows = tuple(tuple(int(x) for x in row) for row in rows)
        self.N = len(self.rows)
        if any(len(r) != self.N for r in self.rows):
            raise ValueError("shift matrix must be square")
        if check:
            bad = validate_shift_matrix(self)
            if bad:
                raise ValueError(f"invalid shift matrix: {bad[0]}")

    @classmethod
    def zero(cls, N: int) -> "ShiftMatrix":
        return cls([[0] * N for _ in range(N)])

    @classmethod
    def parse(cls, text: str, check: bool = True) -> "ShiftMatrix":
        """Parse "0,1;1,0"."""
        try:
            rows = [[int(x) for x in row.split(",")] for row in str(text).replace(" ", "").split(";")]
        except ValueError:
            raise ValueError(f"cannot parse shift matrix {text!r}") from None
        return cls(rows, check)

    def __getitem__(self, ij):
        """1-based entry s_{i,j}."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __len__(self):
        return self.N

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def as_lists(self) -> list:
        return [list(r) for r in self.rows]

    def format(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, ShiftMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ShiftMatrix({self.format()!r})"


def validate_shift_matrix(sigma) -> list:
    """Violations as strings; the first one names the offending entry or triple."""
    rows = sigma.rows if isinstance(sigma, ShiftMatrix) else [list(r) for r in sigma]
    N = len(rows)
    out = []
    for i in range(N):
        if len(rows[i]) != N:
            return [f"row {i + 1} has length {len(rows[i])}"]
    for i in range(N):
        if rows[i][i] != 0:
            out.append(f"diagonal entry ({i + 1},{i + 1}) = {rows[i][i]}")
        for j in range(N):
            if rows[i][j] < 0:
                out.append(f"negative entry ({i + 1},{j + 1})")
            if rows[i][j] != rows[j][i]:
                out.append(f"asymmetric pair ({i + 1},{j + 1})")
    for i, j, k in itertools.product(range(N), repeat=3):
        if abs(i - j) + abs(j - k) == abs(i - k) and rows[i][j] + rows[j][k] != rows[i][k]:
            out.append(f"additivity fails at ({i + 1},{j + 1},{k + 1})")
    return out


# -- pyramids -------------------------------------------------------------------

@dataclass(frozen=True)
class Pyramid:
    rows: tuple          # p_1 <= ... <= p_N, top to bottom

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def level(self) -> int:
        return self.rows[-1]

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    def columns(self) -> list:
        """Column heights q_1..q_l, left to right."""
        l = self.level
        return [sum(1 for p in self.rows if (l - p) // 2 < c <= (l + p) // 2)
                for c in range(1, l + 1)]

    def format(self) -> str:
        return ",".join(str(p) for p in self.rows)

    @classmethod
    def parse(cls, text: str) -> "Pyramid":
        return cls(tuple(int(x) for x in str(text).replace(" ", "").split(",") if x))


def sigma_to_pyramid(sigma: ShiftMatrix, level: int) -> Pyramid:
    N = sigma.N
    if level <= 2 * sigma[1, N]:
        raise ValueError(f"level {level} must exceed 2*s_(1,N) = {2 * sigma[1, N]}")
    return Pyramid(tuple(level - 2 * sigma[i, N] for i in range(1, N + 1)))


def pyramid_to_sigma(P: Pyramid) -> tuple:
    rows = P.rows
    if not rows or any(p < 1 for p in rows):
        raise ValueError("pyramid rows must be positive")
    if any(a > b for a, b in zip(rows, rows[1:])):
        raise ValueError("pyramid rows must be non-decreasing from the top")
    if len({p % 2 for p in rows}) != 1:
        raise ValueError("pyramid rows must share one parity")
    l, N = rows[-1], len(rows)
    top = [(l - p) // 2 for p in rows]
    sig = [[abs(top[i] - top[j]) for j in range(N)] for i in range(N)]
    return ShiftMatrix(sig), l


def is_orthogonal(parts) -> bool:
    return all(parts.count(p) % 2 == 0 for p in set(parts) if p % 2 == 0)


def is_symplectic(parts) -> bool:
    return all(parts.count(p) % 2 == 0 for p in set(parts) if p % 2 == 1)


def classify_w_type(P: Pyramid, kind: str) -> tuple:
    """(sign type, Lie algebra name) attached to the partition of a pyramid."""
    parts = list(P.rows)
    if len({p % 2 for p in parts}) != 1:
        raise ValueError("partition violates the parity assumption")
    odd = P.level % 2 == 1
    M = P.boxes
    if kind == "orthogonal":
        if not is_orthogonal(parts):
            raise ValueError("partition is not orthogonal: an even part has odd multiplicity")
        return (AI if odd else AII), f"so_{M}"
    if kind == "symplectic":
        if not is_symplectic(parts):
            raise ValueError("partition is not symplectic: an odd part has odd multiplicity")
        return (AII if odd else AI), f"sp_{M}"
    raise ValueError(f"kind must be orthogonal or symplectic, got {kind!r}")


def lie_algebra_of(sign: str, level: int, M: int) -> str:
    so = (sign == AI) == (level % 2 == 1)
    return f"so_{M}" if so else f"sp_{M}"


# -- shapes ---------------------------------------------------------------------

def is_admissible(shape: Shape, sigma: ShiftMatrix) -> bool:
    ps = shape.psum
    return all(sigma[ps[a] + 1, ps[a + 1]] == 0 for a in range(shape.n))


def minimal_shape(sigma: ShiftMatrix) -> Shape:
    """Coarsest composition whose diagonal blocks carry no shift."""
    parts, run = [], 1
    for i in range(1, sigma.N):
        if sigma[i, i + 1] == 0:
            run += 1
        else:
            parts.append(run)
            run = 1
    parts.append(run)
    return Shape(parts)


def admissible_shapes(sigma: ShiftMatrix, max_len: int | None = None, sign: str = AI) -> list:
    """All refinements of the minimal shape (even ones only in type AII)."""
    base = minimal_shape(sigma)
    out = []
    for cuts in itertools.product([False, True], repeat=sigma.N - 1):
        parts, run = [], 1
        for i, c in enumerate(cuts, start=1):
            forced = i in base.psum
            if c or forced:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        if max_len is not None and len(parts) > max_len:
            continue
        if sign == AII and any(p % 2 for p in parts):
            continue
        shape = Shape(parts)
        if shape not in out:
            out.append(shape)
    out.sort(key=lambda s: (len(s.parts), s.parts))
    return out


def dot_sigma(sigma: ShiftMatrix, mu: Shape | None = None) -> ShiftMatrix:
    if sigma.is_zero():
        raise ValueError("dot_sigma needs a nonzero shift matrix")
    mu = minimal_shape(sigma) if mu is None else mu
    N, cut = sigma.N, sigma.N - mu.parts[-1]
    rows = [[sigma[i, j] - (1 if (i <= cut < j or j <= cut < i) else 0)
             for j in range(1, N + 1)] for i in range(1, N + 1)]
    return ShiftMatrix(rows)


def shape_shift(sigma: ShiftMatrix | None, shape: Shape, a: int, b: int) -> int:
    """s_{a,b}(mu) = s_{mu_(a), mu_(b)}."""
    if sigma is None:
        return 0
    return sigma[shape.psum[a], shape.psum[b]]


# -- generator labels -------------------------------------------------------------

def H(a, i, j, r) -> tuple:
    return ("H", a, i, j, r)


def B(b, a, i, j, r) -> tuple:
    return ("B", b, a, i, j, r)


def gen(label) -> NCPoly:
    return NCPoly(GENS, {(GENS.encode(label),): ONE})


def label_str(label) -> str:
    if label[0] == "H":
        _, a, i, j, r = label
        return f"H[{a};{i},{j}]^({r})"
    _, b, a, i, j, r = label
    return f"B[{b},{a};{i},{j}]^({r})"


def gen_value(P: ParabolicBase, label) -> dict:
    if label[0] == "H":
        return P.H(*label[1:])
    if label[0] == "B":
        _, b, a, i, j, r = label
        return P.Bba(b, a, i, j, r)
    raise ValueError(f"unknown generator {label!r}")


def realize(expr: NCPoly, P: ParabolicBase) -> dict:
    """Image of an abstract generator expression in the realization P."""
    if expr.ctx is not GENS:
        raise ValueError("expression is not written in parabolic generators")
    return evaluate(expr.terms, lambda g: gen_value(P, GENS.decode(g)), P.ctx)


def shifted_generators(sign: str, shape: Shape, sigma: ShiftMatrix | None, max_level: int) -> list:
    """PBW generators of the shifted algebra up to ``max_level``."""
    check_sign(sign)
    out = []
    mu, n = shape.parts, shape.n
    for a in range(1, n + 1):
        out += _h_labels(sign, a, mu[a - 1], max_level)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            sh = shape_shift(sigma, shape, a, b)
            for i in range(1, mu[b - 1] + 1):
                for j in range(1, mu[a - 1] + 1):
                    out += [B(b, a, i, j, r) for r in range(sh + 1, max_level + 1)]
    return out


def _h_labels(sign: str, a: int, m: int, top: int) -> list:
    out = []
    if sign == AI:
        for i in range(1, m + 1):
            out += [H(a, i, i, r) for r in range(2, top + 1, 2)]
        for i in range(1, m + 1):
            for j in range(1, i):
                out += [H(a, i, j, r) for r in range(1, top + 1)]
        return out
    for k in range(1, m // 2 + 1):
        out += [H(a, 2 * k - 1, 2 * k - 1, r) for r in range(1, top + 1)]
        out += [H(a, 2 * k - 1, 2 * k, r) for r in range(1, top + 1, 2)]
        out += [H(a, 2 * k, 2 * k - 1, r) for r in range(1, top + 1, 2)]
    for i in range(1, m + 1):
        for j in range(1, i):
            if (i + 1) // 2 != (j + 1) // 2:
                out += [H(a, i, j, r) for r in range(1, top + 1)]
    return out


# -- truncations ----------------------------------------------------------------------

@dataclass
class TruncatedCtx:
    """Sign, shift matrix, level and a shape (the minimal one by default)."""

    sign: str
    sigma: ShiftMatrix
    level: int
    shape: Shape | None = None
    rows: tuple = field(init=False)

    def __post_init__(self):
        check_sign(self.sign)
        N = self.sigma.N
        if self.sign == AII and N % 2:
            raise ValueError("type AII needs even N")
        if self.level <= 2 * self.sigma[1, N]:
            raise ValueError(f"level {self.level} must exceed 2*s_(1,N) = {2 * self.sigma[1, N]}")
        if self.shape is None:
            self.shape = minimal_shape(self.sigma)
        if not is_admissible(self.shape, self.sigma):
            raise ValueError(f"shape {self.shape.parts} is not admissible")
        if self.shape.N != N:
            raise ValueError("shape does not sum to N")
        if self.sign == AII and any(p % 2 for p in self.shape.parts):
            raise ValueError(f"type AII needs an even shape, got {self.shape.parts}")
        self.rows = sigma_to_pyramid(self.sigma, self.level).rows

    @classmethod
    def build(cls, sign, N, sigma=None, level=1, shape=None) -> "TruncatedCtx":
        if sigma is None:
            sigma = ShiftMatrix.zero(N)
        elif not isinstance(sigma, ShiftMatrix):
            sigma = ShiftMatrix.parse(sigma) if isinstance(sigma, str) else ShiftMatrix(sigma)
        if sigma.N != N:
            raise ValueError(f"shift matrix has size {sigma.N}, expected {N}")
        if shape is not None and not isinstance(shape, Shape):
            shape = Shape.parse(shape) if isinstance(shape, str) else Shape(shape)
        return cls(sign, sigma, level, shape)

    def with_shape(self, shape) -> "TruncatedCtx":
        return TruncatedCtx(self.sign, self.sigma, self.level, Shape(shape) if not isinstance(shape, Shape) else shape)

    @property
    def N(self) -> int:
        return self.sigma.N

    @property
    def pyramid(self) -> Pyramid:
        return Pyramid(self.rows)

    def p(self, i: int) -> int:
        return self.rows[i - 1]

    def p_block(self, a: int) -> int:
        """p_a(mu) = p_{mu_(a)}."""
        return self.rows[self.shape.psum[a] - 1]

    def shift(self, a: int, b: int) -> int:
        return shape_shift(self.sigma, self.shape, a, b)

    @property
    def M(self) -> int:
        return sum(self.rows)

    @property
    def m(self) -> int:
        return self.M // 2

    @property
    def odd(self) -> bool:
        return self.level % 2 == 1

    def ptilde(self, i: int) -> int:
        p = self.rows[i - 1]
        return (p - 1) // 2 if self.odd else p // 2

    @property
    def s(self) -> int:
        return self.ptilde(self.N)

    def qtilde(self) -> list:
        """[q~_0, ..., q~_s]."""
        q, l = self.pyramid.columns(), self.level
        if self.odd:
            return [q[(l + 1) // 2 + i - 1] for i in range(self.s + 1)]
        return [0] + [q[l // 2 + i - 1] for i in range(1, self.s + 1)]

    @property
    def lie_algebra(self) -> str:
        return lie_algebra_of(self.sign, self.level, self.M)

    def describe(self) -> dict:
        return {"type": self.sign, "N": self.N, "sigma": self.sigma.format(), "level": self.level,
                "shape": list(self.shape.parts), "rows": list(self.rows), "M": self.M,
                "qtilde": self.qtilde(), "lie_algebra": self.lie_algebra}


def truncated_pbw_generators(tr: TruncatedCtx) -> list:
    mu, n = tr.shape.parts, tr.shape.n
    out = []
    for a in range(1, n + 1):
        out += _h_labels(tr.sign, a, mu[a - 1], tr.p_block(a))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            sh, pa = tr.shift(a, b), tr.p_block(a)
            for i in range(1, mu[b - 1] + 1):
                for j in range(1, mu[a - 1] + 1):
                    out += [B(b, a, i, j, r) for r in range(sh + 1, sh + pa + 1)]
    return out


def centralizer_dimension(tr: TruncatedCtx) -> int:
    """dim g^e for the nilpotent with Jordan type given by the pyramid rows."""
    parts = list(tr.rows)
    dual = [sum(1 for p in parts if p > c) for c in range(max(parts))]
    odd = sum(1 for p in parts if p % 2)
    sq = sum(d * d for d in dual)
    if tr.lie_algebra.startswith("so"):
        return (sq - odd) // 2
    return (sq + odd) // 2


def btilde(tr: TruncatedCtx, i: int, k: int) -> NCPoly:
    """Coefficient of u^-k in B°_{1;i,1}(u + 1/2) H_{1;1,1}(u), needs mu_1 = 1."""
    if tr.shape.parts[0] != 1 or tr.shape.n < 2:
        raise ValueError("the extra generator needs a shape with mu_1 = 1")
    s12 = tr.shift(1, 2)
    terms: dict = {}
    for t in range(k):
        for r in range(1, k - t + 1):
            m = k - t - r
            c = comb(r + m - 1, m) * mpq(-1, 2) ** m
            b = GENS.encode(B(2, 1, i, 1, r + s12))
            w = (b,) if t == 0 else (b, GENS.encode(H(1, 1, 1, t)))
            acc(terms, w, c)
    return NCPoly(GENS, terms)


def truncation_ideal_generators(tr: TruncatedCtx, ceiling: int | None = None) -> list:
    """(name, expression) pairs generating I_l, for levels r <= ceiling.

    The ceiling defaults to p_1 + 6.
    """
    p1 = tr.p_block(1)
    top = p1 + 6 if ceiling is None else ceiling
    m1 = tr.shape.parts[0]
    out = []

    def h_family(idx, c):
        for r in range(p1 + 1, top + 1):
            for i, j in idx:
                e, name = gen(H(1, i, j, r)), label_str(H(1, i, j, r))
                if c:
                    e = e + c * gen(H(1, i, j, r - 1))
                    name += f" {'+' if c > 0 else '-'} 1/2 H^({r - 1})"
                out.append((name, e))

    full = [(i, j) for i in range(1, m1 + 1) for j in range(1, m1 + 1)]
    if tr.sign == AI:
        if tr.odd:
            h_family(full, mpq(1, 2))
        elif m1 >= 2:
            h_family(full, 0)
        else:
            h_family([(1, 1)], 0)
            for i in range(1, tr.shape.parts[1] + 1):
                out.append((f"Btilde[1;{i},1]^({tr.shift(1, 2)};{p1 + 1})", btilde(tr, i, p1 + 1)))
    else:
        h_family(full, 0 if not tr.odd else mpq(-1, 2))
    return out
