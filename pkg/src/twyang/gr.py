"""Loop-filtration symbols.

The loop filtration puts t_ij^(r) in degree r - 1, and its associated graded
algebra of the Yangian is U(gl_N[z]).  The twisted current algebra
gl_N[z]^theta is spanned by

    f_ij z^r = e_ij z^r - (-1)^r theta_i theta_j e_j'i' z^r,

and both algebras are truncated at z-degree D (brackets landing at degree
>= D are dropped, which leaves a nilpotent quotient).

Symbols of elements of the twisted Yangian live in U(gl_N[z]^theta).  To
read them off exactly, gl_N[z]/z^D gets the basis of f-vectors followed by the
complementary vectors h_ij z^r = e_ij z^r + (-1)^r theta_i theta_j e_j'i' z^r.
With the f-letters ordered first, an element of the subalgebra has a PBW
expansion free of h-letters.
"""

from __future__ import annotations

import random
import time
from functools import lru_cache
from typing import Mapping

from gmpy2 import mpq

from .conventions import AI, check_sign, prime, theta
from .ncpoly import ONE, ZERO, EnvelopingCtx, LieData, NCPoly, YangianCtx, acc, dadd
from .parabolic import Shape
from .shifted import ShiftMatrix, gen_value, label_str, shifted_generators
from .twisted import Report, TwistedCtx

HALF = mpq(1, 2)


def _gl_bracket_z(x: Mapping, y: Mapping, D: int) -> dict:
    """Bracket in gl_N[z]/z^D of vectors {(i, j, r): c}."""
    out: dict = {}
    for (i, j, r), a in x.items():
        for (k, l, s), b in y.items():
            if r + s >= D:
                continue
            if j == k:
                acc(out, (i, l, r + s), a * b)
            if l == i:
                acc(out, (k, j, r + s), -a * b)
    return out


class _Split:
    """The f/h basis of gl_N[z]/z^D."""

    def __init__(self, sign: str, N: int, D: int):
        self.sign, self.N, self.D = sign, N, D
        f_labels, h_labels = [], []
        self.pairs = {}           # (i, j, r) -> (canonical (i, j), eps)
        for r in range(D):
            for i in range(N, 0, -1):
                for j in range(N, 0, -1):
                    if (i, j, r) in self.pairs:
                        continue
                    ip, jp = prime(sign, j), prime(sign, i)
                    eps = (-1) ** r * theta(sign, i) * theta(sign, j)
                    self.pairs[(i, j, r)] = ((i, j), eps)
                    self.pairs[(ip, jp, r)] = ((i, j), eps)
                    if (ip, jp) != (i, j) or eps == -1:
                        f_labels.append(("f", i, j, r))
                    if (ip, jp) != (i, j) or eps == 1:
                        h_labels.append(("h", i, j, r))
        self.labels = f_labels + h_labels
        self.nf = len(f_labels)
        self.index = {lab: k for k, lab in enumerate(self.labels)}

    def vector(self, kind: str, i: int, j: int, r: int) -> dict:
        """f or h as a gl_N[z] vector."""
        s = -1 if kind == "f" else 1
        _, eps = self.pairs[(i, j, r)]
        out: dict = {}
        acc(out, (i, j, r), ONE)
        acc(out, (prime(self.sign, j), prime(self.sign, i), r), mpq(s * eps))
        return out

    def decompose(self, v: Mapping) -> dict:
        """Coordinates of a gl_N[z] vector in the f/h basis."""
        out: dict = {}
        done = set()
        for (i, j, r), c in v.items():
            (ci, cj), eps = self.pairs[(i, j, r)]
            if (ci, cj, r) in done:
                continue
            done.add((ci, cj, r))
            a = v.get((ci, cj, r), ZERO)
            pi, pj = prime(self.sign, cj), prime(self.sign, ci)
            if (pi, pj) == (ci, cj):
                key = ("f" if eps == -1 else "h", ci, cj, r)
                acc(out, self.index[key], a / 2)
                continue
            b = v.get((pi, pj, r), ZERO)
            acc(out, self.index[("f", ci, cj, r)], (a - eps * b) / 2)
            acc(out, self.index[("h", ci, cj, r)], (a + eps * b) / 2)
        return out

    def e_letter(self, i: int, j: int, r: int) -> dict:
        """e_ij z^r in the f/h basis."""
        return self.decompose({(i, j, r): ONE})


@lru_cache(maxsize=None)
def _split(sign: str, N: int, D: int) -> _Split:
    return _Split(sign, N, D)


def _lie_from(split: _Split, count: int, name: str) -> LieData:
    vecs = [split.vector(lab[0], *lab[1:]) for lab in split.labels[:count]]
    br = {}
    for a in range(count):
        for b in range(count):
            v = _gl_bracket_z(vecs[a], vecs[b], split.D)
            if v:
                d = split.decompose(v)
                if any(k >= count for k in d):
                    raise ArithmeticError(f"{name} is not closed under the bracket")
                br[(a, b)] = d
    return LieData(name, split.labels[:count], br)


class CurrentLieData(LieData):
    """gl_N[z]^theta truncated at z-degree D, basis f_ij z^r with canonical labels."""

    def __init__(self, sign: str, N: int, D: int):
        check_sign(sign)
        self.sign, self.N, self.D = sign, N, D
        self.split = _split(sign, N, D)
        base = _lie_from(self.split, self.split.nf, f"current({sign},{N},<{D})")
        super().__init__(base.name, base.labels, base.brackets)

    def f(self, i: int, j: int, r: int) -> dict:
        """f_ij z^r as a vector {basis index: c}; empty when it vanishes or r >= D."""
        if r >= self.D:
            return {}
        d = self.split.decompose(self.split.vector("f", i, j, r))
        if any(k >= self.split.nf for k in d):
            raise ArithmeticError("f-vector left the subalgebra")
        return d

    def shifted_closed(self, sigma: ShiftMatrix) -> bool:
        """Is the span of f_ij z^r with r >= s_ij (both orders) closed under the bracket?"""
        def ok(lab):
            _, i, j, r = lab
            return r >= min(sigma[i, j], sigma[j, i])
        keep = {k for k, lab in enumerate(self.labels) if ok(lab)}
        for (a, b), v in self.brackets.items():
            if a in keep and b in keep and any(k not in keep for k in v):
                return False
        return True


@lru_cache(maxsize=None)
def current_lie(sign: str, N: int, D: int) -> CurrentLieData:
    return CurrentLieData(sign, N, D)


@lru_cache(maxsize=None)
def current_ctx(sign: str, N: int, D: int) -> EnvelopingCtx:
    return EnvelopingCtx(current_lie(sign, N, D))


@lru_cache(maxsize=None)
def _ambient_ctx(sign: str, N: int, D: int) -> EnvelopingCtx:
    split = _split(sign, N, D)
    return EnvelopingCtx(_lie_from(split, len(split.labels), f"gl_{N}[z]<{D}"))


def loop_degree(Y: YangianCtx, word: tuple) -> int:
    return sum(Y.level(g) - 1 for g in word)


def leading_symbol(p: NCPoly, sign: str, D: int | None = None, degree: int | None = None) -> NCPoly:
    """Symbol of a Yangian element lying in the twisted Yangian.

    The top loop-degree part (or the part of the given ``degree``) is read in
    U(gl_N[z]) and rewritten in the f-basis of U(gl_N[z]^theta).  Scalars
    carry no symbol.
    """
    Y = p.ctx
    if not isinstance(Y, YangianCtx):
        raise ValueError("leading_symbol needs a Yangian element")
    N = Y.N
    words = {w: c for w, c in p.terms.items() if w}
    if degree is None:
        degree = max((loop_degree(Y, w) for w in words), default=0)
    D = degree + 1 if D is None else D
    U = current_ctx(sign, N, D)
    A = _ambient_ctx(sign, N, D)
    split = _split(sign, N, D)
    total: dict = {}
    for w, c in words.items():
        if loop_degree(Y, w) != degree:
            continue
        cur = {(): c}
        for g in w:
            _, i, j, r = Y.decode(g)
            cur = A.mul(cur, A.vec(split.e_letter(i, j, r - 1)))
        total = dadd(total, cur)
    for w in total:
        if any(k >= split.nf for k in w):
            raise ValueError("symbol does not lie in U(gl_N[z]^theta)")
    return NCPoly(U, total)


def generator_symbol(label: tuple, shape: Shape, lie: CurrentLieData) -> dict:
    """Expected symbol of a parabolic generator: f_{mu(b-1)+i, mu(a-1)+j} z^(r-1)."""
    if label[0] == "H":
        _, a, i, j, r = label
        b = a
    else:
        _, b, a, i, j, r = label
    return lie.f(shape.psum[b - 1] + i, shape.psum[a - 1] + j, r - 1)


def gr_bracket_check(N: int, sign: str, sigma: ShiftMatrix | None = None, bound: int = 4,
                     shape=None, pairs: int | None = None, seed: int = 0) -> list:
    """Symbols of parabolic generators and of their commutators.

    For every generator of level <= bound the symbol is compared with its
    expected current-algebra element.  For every (sampled) pair the part of
    the commutator in loop degree r + s - 2 is compared with the bracket of the
    two symbols; when that bracket vanishes the commutator drops degree and the
    instance says so in its note.
    """
    from .morphisms import yangian_shifted
    tctx = TwistedCtx(sign, N)
    if shape is None:
        shape = Shape([1] * N) if sign == AI else Shape([2] * (N // 2))
    shape = shape if isinstance(shape, Shape) else Shape.parse(shape)
    P = yangian_shifted(tctx, shape, sigma, bound)
    D = 2 * bound - 1
    lie, U = current_lie(sign, N, D), current_ctx(sign, N, D)
    labels = shifted_generators(sign, shape, sigma, bound)
    vals = {lab: NCPoly(tctx.Y, gen_value(P, lab)) for lab in labels}
    syms = {lab: generator_symbol(lab, shape, lie) for lab in labels}
    out = []
    for lab in labels:
        t0 = time.perf_counter()
        got = leading_symbol(vals[lab], sign, D, degree=lab[-1] - 1)
        exp = NCPoly(U, U.vec(syms[lab]))
        diff = got - exp
        out.append(Report("gr-generator", {"x": label_str(lab)}, "pass" if diff.is_zero() else "fail",
                          None if diff.is_zero() else diff, time.perf_counter() - t0))
    todo = [(x, y) for k, x in enumerate(labels) for y in labels[k + 1:]]
    if pairs is not None and pairs < len(todo):
        todo = random.Random(seed).sample(todo, pairs)
    for x, y in todo:
        t0 = time.perf_counter()
        deg = x[-1] + y[-1] - 2
        c = vals[x].bracket(vals[y])
        got = leading_symbol(c, sign, D, degree=deg)
        exp = NCPoly(U, U.vec(lie.bracket_vec(syms[x], syms[y])))
        diff = got - exp
        note = "degree drops" if exp.is_zero() and diff.is_zero() else ""
        out.append(Report("gr-bracket", {"x": label_str(x), "y": label_str(y)},
                          "pass" if diff.is_zero() else "fail", None if diff.is_zero() else diff,
                          time.perf_counter() - t0, note))
    return out


def four_term(lie: CurrentLieData, i, j, r, k, l, s) -> dict:
    """delta_jk e_il - delta_li e_kj - (-1)^r delta_ki e_jl + (-1)^r delta_jl e_ki, at z^(r+s)."""
    out: dict = {}
    t, sg = r + s, (-1) ** r

    def add(cond, a, b, c):
        if cond:
            for key, v in lie.f(a, b, t).items():
                acc(out, key, c * v)
    add(j == k, i, l, ONE)
    add(l == i, k, j, -ONE)
    add(k == i, j, l, mpq(-sg))
    add(j == l, k, i, mpq(sg))
    return out
