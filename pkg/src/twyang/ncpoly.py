"""Exact noncommutative polynomials over PBW contexts.

Elements are sparse maps from words (tuples of integer generator ids) to
``gmpy2.mpq`` coefficients.  A context fixes the generator order (the
integer order of the ids) and a commutation oracle; multiplication
straightens every product into ordered (PBW) words.

Three kinds of context are provided:

* :class:`YangianCtx` for ``Y(gl_N)`` with generators ``t_ij^(r)``,
* :class:`EnvelopingCtx` for ``U(g)`` of a structure-constant Lie algebra,
* :class:`TensorCtx` for tensor products of the above.

:class:`FreeCtx` is a free algebra without straightening, used to record
expressions in abstract generator symbols.
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq

from .conventions import check_sign, lie_name, prime, theta

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

ONE = mpq(1)
ZERO = mpq(0)
Rational = mpq


class ContextMismatch(ValueError):
    pass


def Q(x) -> mpq:
    """Coerce ints, strings like ``"3/4"``, Fractions and mpq to mpq."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            a, b = x.split("/")
            if int(b) == 0:
                raise ZeroDivisionError(x)
            return mpq(int(a), int(b))
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def qstr(q) -> str:
    q = mpq(q)
    return f"{q.numerator}/{q.denominator}"


# -- raw dictionary helpers ------------------------------------------------

def acc(d: dict, w, c) -> None:
    """d[w] += c, deleting zero entries."""
    v = d.get(w)
    if v is None:
        if c:
            d[w] = c
    else:
        v = v + c
        if v:
            d[w] = v
        else:
            del d[w]


def dadd(x: Mapping, y: Mapping, s=ONE) -> dict:
    out = dict(x)
    for w, c in y.items():
        acc(out, w, s * c)
    return out


def dscale(x: Mapping, s) -> dict:
    if not s:
        return {}
    return {w: s * c for w, c in x.items()}


# -- contexts ----------------------------------------------------------------

class AlgebraCtx:
    """A PBW context: integer generator ids ordered by value, plus an oracle
    returning the normal form of ``[g_a, g_b]`` for ``a > b``."""

    ctx_id = "abstract"

    def __init__(self):
        self._mg: dict = {}
        self._cc: dict = {}

    # subclasses provide encode/decode/comm_raw/weight
    def encode(self, sym) -> int:
        raise NotImplementedError

    def decode(self, gid: int):
        raise NotImplementedError

    def comm_raw(self, a: int, b: int) -> dict:
        raise NotImplementedError

    def owns(self, gid: int) -> bool:
        try:
            self.decode(gid)
        except (ValueError, IndexError, KeyError):
            return False
        return True

    def clear_cache(self):
        self._mg.clear()
        self._cc.clear()

    def comm(self, a: int, b: int) -> dict:
        key = (a, b)
        r = self._cc.get(key)
        if r is None:
            r = self.comm_raw(a, b)
            self._cc[key] = r
        return r

    def mul_word_gen(self, A: tuple, g: int) -> dict:
        if not A or A[-1] <= g:
            return {A + (g,): ONE}
        key = (A, g)
        res = self._mg.get(key)
        if res is not None:
            return res
        a = A[-1]
        P = A[:-1]
        res = {}
        # P a g = (P g) a + P [a, g]
        for w, c in self.mul_word_gen(P, g).items():
            if w[-1] <= a:
                acc(res, w + (a,), c)
            else:
                for w2, c2 in self.mul_word_gen(w, a).items():
                    acc(res, w2, c * c2)
        for w, c in self.comm(a, g).items():
            for w2, c2 in self.mul_words(P, w).items():
                acc(res, w2, c * c2)
        self._mg[key] = res
        return res

    def mul_words(self, A: tuple, B: tuple) -> dict:
        """Product of two ordered words."""
        if not B:
            return {A: ONE}
        if not A or A[-1] <= B[0]:
            return {A + B: ONE}
        cur = {A: ONE}
        for g in B:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.mul_word_gen(w, g).items():
                    acc(nxt, w2, c * c2)
            cur = nxt
        return cur

    def mul(self, X: Mapping, Y: Mapping) -> dict:
        out: dict = {}
        for a, ca in X.items():
            for b, cb in Y.items():
                c = ca * cb
                for w, cw in self.mul_words(a, b).items():
                    acc(out, w, c * cw)
        return out

    def normal_form_word(self, word: tuple) -> dict:
        cur = {(): ONE}
        for g in word:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.mul_word_gen(w, g).items():
                    acc(nxt, w2, c * c2)
            cur = nxt
        return cur

    def normal_form(self, terms: Mapping) -> dict:
        out: dict = {}
        for w, c in terms.items():
            for g in w:
                if not self.owns(g):
                    raise ContextMismatch(f"generator id {g} not in {self.ctx_id}")
            for w2, c2 in self.normal_form_word(tuple(w)).items():
                acc(out, w2, c * c2)
        return out

    def weight(self, gid: int) -> int:
        return 1

    def sym_json(self, gid: int) -> list:
        return list(self.decode(gid))

    def sym_from_json(self, item) -> int:
        return self.encode(tuple(item))

    def sym_str(self, gid: int) -> str:
        s = self.decode(gid)
        return f"{s[0]}[{','.join(map(str, s[1:]))}]"

    def __repr__(self):
        return f"<{type(self).__name__} {self.ctx_id}>"


class YangianCtx(AlgebraCtx):
    """Y(gl_N).  Generators are ordered by level first, then by the position
    of (i, j) in ``pair_order`` (lexicographic by default)."""

    def __init__(self, N: int, pair_order: Iterable[tuple] | None = None):
        super().__init__()
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
        if pair_order is not None:
            pair_order = [tuple(p) for p in pair_order]
            if sorted(pair_order) != pairs:
                raise ValueError("pair_order must be a permutation of all (i, j)")
            pairs = pair_order
        self.pairs = pairs
        self._pos = {p: k for k, p in enumerate(pairs)}
        self.NN = N * N
        self.ctx_id = f"Y(gl_{N})" if pair_order is None else f"Y(gl_{N})*"

    def gid(self, i: int, j: int, r: int) -> int:
        if not (1 <= i <= self.N and 1 <= j <= self.N) or r < 1:
            raise ValueError(f"t[{i},{j};{r}] out of range for {self.ctx_id}")
        return (r - 1) * self.NN + self._pos[(i, j)]

    def encode(self, sym) -> int:
        if sym[0] != "t" or len(sym) != 4:
            raise ContextMismatch(f"{sym!r} is not a Yangian symbol")
        return self.gid(sym[1], sym[2], sym[3])

    def decode(self, gid: int):
        if gid < 0:
            raise ValueError(gid)
        r, p = divmod(gid, self.NN)
        i, j = self.pairs[p]
        return ("t", i, j, r + 1)

    def owns(self, gid: int) -> bool:
        return isinstance(gid, int) and gid >= 0

    def level(self, gid: int) -> int:
        return gid // self.NN + 1

    def weight(self, gid: int) -> int:
        # loop degree
        return gid // self.NN

    def sym_str(self, gid: int) -> str:
        _, i, j, r = self.decode(gid)
        return f"t[{i},{j};{r}]"

    def t(self, i: int, j: int, r: int) -> dict:
        """t_ij^(r) as a raw element, with t^(0) = delta."""
        if r == 0:
            return {(): ONE} if i == j else {}
        return {(self.gid(i, j, r),): ONE}

    def comm_raw(self, a: int, b: int) -> dict:
        _, i, j, r = self.decode(a)
        _, k, l, s = self.decode(b)
        out: dict = {}
        for c in range(min(r, s)):
            hi = r + s - 1 - c
            if c == 0:
                if k == j:
                    acc(out, (self.gid(i, l, hi),), ONE)
                if i == l:
                    acc(out, (self.gid(k, j, hi),), -ONE)
            else:
                for w, cc in self.mul_word_gen((self.gid(k, j, c),), self.gid(i, l, hi)).items():
                    acc(out, w, cc)
                for w, cc in self.mul_word_gen((self.gid(k, j, hi),), self.gid(i, l, c)).items():
                    acc(out, w, -cc)
        return out


class LieData:
    """A finite-dimensional Lie algebra given by sparse structure constants.

    ``brackets[(a, b)]`` is a dict ``{k: c}`` meaning ``[x_a, x_b] = sum c x_k``.
    Only pairs with a nonzero bracket are stored; both orders are kept.
    """

    def __init__(self, name: str, labels: list, brackets: Mapping):
        self.name = name
        self.labels = list(labels)
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self.brackets = {k: dict(v) for k, v in brackets.items() if v}

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def br(self, a: int, b: int) -> dict:
        return self.brackets.get((a, b), {})

    def bracket_vec(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in self.br(a, b).items():
                    acc(out, k, ca * cb * c)
        return out

    def check_antisymmetry(self) -> list:
        bad = []
        n = self.dimension
        for a in range(n):
            for b in range(n):
                x = self.br(a, b)
                y = self.br(b, a)
                if dadd(x, y) != {}:
                    bad.append((a, b))
        return bad

    def check_jacobi(self) -> list:
        bad = []
        n = self.dimension
        for a, b, c in itertools.combinations(range(n), 3):
            xa, xb, xc = {a: ONE}, {b: ONE}, {c: ONE}
            tot = self.bracket_vec(xa, self.bracket_vec(xb, xc))
            tot = dadd(tot, self.bracket_vec(xb, self.bracket_vec(xc, xa)))
            tot = dadd(tot, self.bracket_vec(xc, self.bracket_vec(xa, xb)))
            if tot:
                bad.append((a, b, c))
        return bad


def _gl_bracket(x: Mapping, y: Mapping) -> dict:
    """Bracket of two gl_N elements given as {(i, j): c}."""
    out: dict = {}
    for (i, j), a in x.items():
        for (k, l), b in y.items():
            if j == k:
                acc(out, (i, l), a * b)
            if l == i:
                acc(out, (k, j), -a * b)
    return out


def gl_lie(n: int, order: Iterable[tuple] | None = None) -> LieData:
    """gl_n with basis e_ij, ordered lexicographically unless ``order`` is given."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    if order is not None:
        order = [tuple(p) for p in order]
        if sorted(order) != pairs:
            raise ValueError("order must be a permutation of all (i, j)")
        pairs = order
    labels = [("e", i, j) for i, j in pairs]
    idx = {p: k for k, p in enumerate(pairs)}
    br = {}
    for a, p in enumerate(pairs):
        for b, q in enumerate(pairs):
            v = _gl_bracket({p: ONE}, {q: ONE})
            if v:
                br[(a, b)] = {idx[w]: c for w, c in v.items()}
    return LieData(f"gl_{n}", labels, br)


class GLieData(LieData):
    """g_N = so_N (AI) or sp_N (AII), spanned by f_ij = e_ij - theta_i theta_j e_j'i'.

    ``rep[(i, j)] = (k, c)`` records f_ij = c * (basis element k); c = 0 when
    f_ij vanishes.
    """

    def __init__(self, sign: str, N: int):
        check_sign(sign)
        if sign == "AII" and N % 2:
            raise ValueError("type AII needs even N")
        self.sign, self.N = sign, N
        rep: dict = {}
        basis: list = []   # (i, j) representatives
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if (i, j) in rep:
                    continue
                pi, pj = prime(sign, j), prime(sign, i)
                tt = theta(sign, i) * theta(sign, j)
                if (pi, pj) == (i, j):
                    if 1 - tt == 0:
                        rep[(i, j)] = (None, ZERO)
                    else:
                        rep[(i, j)] = (len(basis), ONE)
                        basis.append((i, j))
                else:
                    rep[(i, j)] = (len(basis), ONE)
                    rep[(pi, pj)] = (len(basis), mpq(-tt))
                    basis.append((i, j))
        self.rep = rep
        self.basis_pairs = basis
        vecs = [self.f_vector(i, j) for i, j in basis]
        br = {}
        for a in range(len(basis)):
            for b in range(len(basis)):
                v = _gl_bracket(vecs[a], vecs[b])
                if v:
                    br[(a, b)] = self.decompose(v)
        super().__init__(lie_name(sign, N), [("f", i, j) for i, j in basis], br)

    def f_vector(self, i: int, j: int) -> dict:
        out: dict = {}
        acc(out, (i, j), ONE)
        acc(out, (prime(self.sign, j), prime(self.sign, i)),
            -mpq(theta(self.sign, i) * theta(self.sign, j)))
        return out

    def decompose(self, v: Mapping) -> dict:
        """Express a gl_N vector lying in g_N in the f-basis."""
        out: dict = {}
        for k, (i, j) in enumerate(self.basis_pairs):
            c = v.get((i, j), ZERO)
            if c:
                lead = self.f_vector(i, j)[(i, j)]
                acc(out, k, c / lead)
        back: dict = {}
        for k, c in out.items():
            for w, d in self.f_vector(*self.basis_pairs[k]).items():
                acc(back, w, c * d)
        if dadd(back, v, -ONE):
            raise ValueError("vector does not lie in g_N")
        return out

    def f(self, i: int, j: int) -> dict:
        """f_ij as a basis vector {k: c}."""
        k, c = self.rep[(i, j)]
        return {} if not c else {k: c}


class EnvelopingCtx(AlgebraCtx):
    """U(g) for a LieData; generator ids are basis indices."""

    def __init__(self, lie: LieData):
        super().__init__()
        self.lie = lie
        self.ctx_id = f"U({lie.name})"

    def encode(self, sym) -> int:
        try:
            return self.lie.index[tuple(sym)]
        except KeyError:
            raise ContextMismatch(f"{sym!r} not a basis label of {self.lie.name}") from None

    def decode(self, gid: int):
        return self.lie.labels[gid]

    def owns(self, gid: int) -> bool:
        return isinstance(gid, int) and 0 <= gid < self.lie.dimension

    def comm_raw(self, a: int, b: int) -> dict:
        return {(k,): c for k, c in self.lie.br(a, b).items()}

    def vec(self, v: Mapping) -> dict:
        """Embed a Lie algebra vector {k: c} as a degree-one element."""
        return {(k,): c for k, c in v.items() if c}

    def e(self, i: int, j: int) -> dict:
        return {(self.encode(("e", i, j)),): ONE}


SLOT = 1 << 40


class TensorCtx(AlgebraCtx):
    """Tensor product; the id of slot k symbol g is ``k * 2**40 + g`` so that
    words are slot-major.  Symbols in distinct slots commute."""

    def __init__(self, factors: list):
        super().__init__()
        self.factors = list(factors)
        self.ctx_id = " (x) ".join(f.ctx_id for f in self.factors)

    def encode(self, sym) -> int:
        if sym[0] != "slot":
            raise ContextMismatch(f"{sym!r} is not a tensor symbol")
        k = sym[1]
        if not 0 <= k < len(self.factors):
            raise ValueError(f"bad slot {k}")
        return k * SLOT + self.factors[k].encode(tuple(sym[2:]))

    def decode(self, gid: int):
        k, g = divmod(gid, SLOT)
        return ("slot", k) + tuple(self.factors[k].decode(g))

    def owns(self, gid: int) -> bool:
        k, g = divmod(gid, SLOT)
        return 0 <= k < len(self.factors) and self.factors[k].owns(g)

    def sym_str(self, gid: int) -> str:
        k, g = divmod(gid, SLOT)
        return f"{self.factors[k].sym_str(g)}@{k}"

    def weight(self, gid: int) -> int:
        k, g = divmod(gid, SLOT)
        return self.factors[k].weight(g)

    def comm_raw(self, a: int, b: int) -> dict:
        ka, ga = divmod(a, SLOT)
        kb, gb = divmod(b, SLOT)
        if ka != kb:
            return {}
        off = ka * SLOT
        return {tuple(off + x for x in w): c
                for w, c in self.factors[ka].comm(ga, gb).items()}

    def split(self, word: tuple) -> list:
        parts = [[] for _ in self.factors]
        for g in word:
            k, x = divmod(g, SLOT)
            parts[k].append(x)
        return [tuple(p) for p in parts]

    def join(self, parts) -> tuple:
        out = []
        for k, p in enumerate(parts):
            off = k * SLOT
            out.extend(off + x for x in p)
        return tuple(out)

    def _combine(self, per_slot: list) -> dict:
        out: dict = {}
        for combo in itertools.product(*[list(d.items()) for d in per_slot]):
            c = ONE
            for _, cc in combo:
                c = c * cc
            acc(out, self.join([w for w, _ in combo]), c)
        return out

    def mul_words(self, A: tuple, B: tuple) -> dict:
        if not B:
            return {A: ONE}
        if not A or A[-1] <= B[0]:
            return {A + B: ONE}
        pa, pb = self.split(A), self.split(B)
        return self._combine([f.mul_words(x, y) for f, x, y in zip(self.factors, pa, pb)])

    def mul_word_gen(self, A: tuple, g: int) -> dict:
        return self.mul_words(A, (g,))

    def normal_form_word(self, word: tuple) -> dict:
        parts = self.split(word)
        return self._combine([f.normal_form_word(p) for f, p in zip(self.factors, parts)])

    def inject(self, terms: Mapping, slot: int) -> dict:
        if not 0 <= slot < len(self.factors):
            raise ValueError(f"bad slot {slot}")
        off = slot * SLOT
        return {tuple(off + x for x in w): c for w, c in terms.items()}

    def pure(self, parts: list) -> dict:
        """x_0 (x) x_1 (x) ... for raw elements x_k of the factors."""
        return self._combine(list(parts))


class FreeCtx(AlgebraCtx):
    """Free associative algebra on interned labels; no straightening."""

    def __init__(self, name: str = "free"):
        super().__init__()
        self.ctx_id = name
        self.labels: list = []
        self.index: dict = {}

    def encode(self, sym) -> int:
        sym = tuple(sym)
        k = self.index.get(sym)
        if k is None:
            k = len(self.labels)
            self.labels.append(sym)
            self.index[sym] = k
        return k

    def decode(self, gid: int):
        return self.labels[gid]

    def owns(self, gid: int) -> bool:
        return isinstance(gid, int) and 0 <= gid < len(self.labels)

    def mul_words(self, A: tuple, B: tuple) -> dict:
        return {A + B: ONE}

    def mul_word_gen(self, A: tuple, g: int) -> dict:
        return {A + (g,): ONE}

    def normal_form_word(self, word: tuple) -> dict:
        return {tuple(word): ONE}

    def sym_str(self, gid: int) -> str:
        return str(self.labels[gid])


# -- the polynomial type ---------------------------------------------------

class NCPoly:
    """An immutable element of a context: ``{word: coefficient}``."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraCtx, terms: Mapping | None = None):
        self.ctx = ctx
        self.terms = {w: mpq(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def scalar(cls, ctx: AlgebraCtx, c) -> "NCPoly":
        return cls(ctx, {(): Q(c)} if c else {})

    @classmethod
    def gen(cls, ctx: AlgebraCtx, sym) -> "NCPoly":
        return cls(ctx, {(ctx.encode(tuple(sym)),): ONE})

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"{self.ctx.ctx_id} vs {other.ctx.ctx_id}")
            return other
        return NCPoly.scalar(self.ctx, other)

    def __add__(self, other):
        o = self._coerce(other)
        return NCPoly(self.ctx, dadd(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NCPoly(self.ctx, dadd(self.terms, o.terms, -ONE))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return NCPoly(self.ctx, dscale(self.terms, -ONE))

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            o = self._coerce(other)
            return NCPoly(self.ctx, self.ctx.mul(self.terms, o.terms))
        return NCPoly(self.ctx, dscale(self.terms, Q(other)))

    def __rmul__(self, other):
        return NCPoly(self.ctx, dscale(self.terms, Q(other)))

    def bracket(self, other) -> "NCPoly":
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.ctx is other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is type(ONE):
            return self.terms == ({(): mpq(other)} if other else {})
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get((), ZERO)

    def normal_form(self) -> "NCPoly":
        return NCPoly(self.ctx, self.ctx.normal_form(self.terms))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        return {"ctx": self.ctx.ctx_id,
                "terms": [{"coeff": qstr(c), "word": [self.ctx.sym_json(g) for g in w]}
                          for w, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping, ctx: AlgebraCtx) -> "NCPoly":
        if data.get("ctx") != ctx.ctx_id:
            raise ContextMismatch(f"json ctx {data.get('ctx')!r} != {ctx.ctx_id!r}")
        terms: dict = {}
        for t in data["terms"]:
            acc(terms, tuple(ctx.sym_from_json(s) for s in t["word"]), Q(t["coeff"]))
        return cls(ctx, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            word = "*".join(self.ctx.sym_str(g) for g in w)
            if not w:
                parts.append(str(c))
            elif c == 1:
                parts.append(word)
            elif c == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")


# -- named operations ----------------------------------------------------------

def normal_form(p: NCPoly, ctx: AlgebraCtx | None = None) -> NCPoly:
    if ctx is not None and ctx is not p.ctx:
        raise ContextMismatch(f"{p.ctx.ctx_id} vs {ctx.ctx_id}")
    return p.normal_form()


def multiply(p: NCPoly, q: NCPoly, ctx: AlgebraCtx | None = None) -> NCPoly:
    if ctx is not None and (p.ctx is not ctx or q.ctx is not ctx):
        raise ContextMismatch("operands do not live in the given context")
    return p * q


def t(ctx: YangianCtx, i: int, j: int, r: int) -> NCPoly:
    return NCPoly(ctx, ctx.t(i, j, r))


def yangian_commutator(i, j, r, k, l, s, N_or_ctx) -> NCPoly:
    """[t_ij^(r), t_kl^(s)] from the closed formula, in normal form."""
    ctx = N_or_ctx if isinstance(N_or_ctx, YangianCtx) else YangianCtx(N_or_ctx)
    for x in (i, j, k, l):
        if not 1 <= x <= ctx.N:
            raise ValueError(f"index {x} out of range")
    if r < 1 or s < 1:
        raise ValueError("levels must be positive")
    out: dict = {}
    for a in range(min(r, s)):
        hi = r + s - 1 - a
        out = dadd(out, ctx.mul(ctx.t(k, j, a), ctx.t(i, l, hi)))
        out = dadd(out, ctx.mul(ctx.t(k, j, hi), ctx.t(i, l, a)), -ONE)
    return NCPoly(ctx, out)


def tensor_inject(p: NCPoly, slot: int, ctx: TensorCtx) -> NCPoly:
    if not 0 <= slot < len(ctx.factors):
        raise ValueError(f"bad slot {slot}")
    if p.ctx is not ctx.factors[slot]:
        raise ContextMismatch(f"{p.ctx.ctx_id} is not factor {slot} of {ctx.ctx_id}")
    return NCPoly(ctx, ctx.inject(p.terms, slot))


def evaluate(terms: Mapping, images, target: AlgebraCtx, cache: dict | None = None) -> dict:
    """Apply the algebra map g -> images(g) to a raw element (words are read
    left to right; each image is a raw element of ``target``)."""
    out: dict = {}
    memo = {} if cache is None else cache
    for w, c in terms.items():
        cur = {(): ONE}
        for g in w:
            img = memo.get(g)
            if img is None:
                img = images(g)
                memo[g] = img
            cur = target.mul(cur, img)
            if not cur:
                break
        for w2, c2 in cur.items():
            acc(out, w2, c * c2)
    return out
