"""Evaluation maps, the counit, the baby comultiplication and the Miura transform.

Every map into a tensor product is presented as a *realization*: a
:class:`~twyang.parabolic.ParabolicBase` whose H and B series are the
images of the source generators.  Relations, determinants and ideal
generators are then evaluated in the realization exactly as they are in the
Yangian, which is how the homomorphism property gets tested.

The Miura transform lives in one flat tensor context

    slot 0            U(g_N) (odd level) or U(gl_N) (even level)
    slot 1, 2, ...    U(gl_t) for the successive baby comultiplications,

the first comultiplication applied owning the last slot.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .conventions import AI, check_sign, prime, theta
from .ncpoly import (ONE, AlgebraCtx, EnvelopingCtx, FreeCtx, GLieData, NCPoly, TensorCtx,
                     YangianCtx, acc, dadd, evaluate, gl_lie)
from .parabolic import GaussParabolic, GeneratedParabolic, ParabolicBase, RefinedParabolic, Shape
from .series import SeriesMatrix, USeries, series_mul
from .shifted import ShiftMatrix, TruncatedCtx, dot_sigma, label_str, minimal_shape
from .twisted import TwistedCtx, fused_sdet, qdet

S_GENS = FreeCtx("s-generators")

_GL: dict = {}
_GN: dict = {}


def gl_ctx(n: int) -> EnvelopingCtx:
    """Shared U(gl_n)."""
    if n not in _GL:
        _GL[n] = EnvelopingCtx(gl_lie(n))
    return _GL[n]


def g_ctx(sign: str, N: int) -> EnvelopingCtx:
    """Shared U(g_N): so_N for AI, sp_N for AII."""
    key = (check_sign(sign), N)
    if key not in _GN:
        _GN[key] = EnvelopingCtx(GLieData(sign, N))
    return _GN[key]


def s_gen(i: int, j: int, r: int) -> NCPoly:
    """Abstract twisted Yangian generator s_ij^(r), for feeding :func:`evaluation_xi`."""
    return NCPoly(S_GENS, {(S_GENS.encode(("s", i, j, r)),): ONE})


# -- evaluation maps --------------------------------------------------------------------

def evaluation_pi(p: NCPoly, n: int | None = None) -> NCPoly:
    """pi: t_ij^(r) -> delta_{r1} e_ij."""
    Y = p.ctx
    if not isinstance(Y, YangianCtx):
        raise ValueError("evaluation_pi needs a Yangian element")
    n = Y.N if n is None else n
    if n != Y.N:
        raise ValueError("target rank must match the Yangian")
    U = gl_ctx(n)

    def img(g):
        _, i, j, r = Y.decode(g)
        return U.e(i, j) if r == 1 else {}
    return NCPoly(U, evaluate(p.terms, img, U))


def xi_coefficient(sign: str) -> mpq:
    """c with xi(s_ij^(r)) = c^(r-1) f_ij: -1/2 in type AI, +1/2 in type AII."""
    return mpq(-1, 2) if check_sign(sign) == AI else mpq(1, 2)


def xi_s(sign: str, N: int, i: int, j: int, r: int, U: EnvelopingCtx | None = None) -> dict:
    U = g_ctx(sign, N) if U is None else U
    if r == 0:
        return {(): ONE} if i == j else {}
    c = xi_coefficient(sign) ** (r - 1)
    return {w: c * cc for w, cc in U.vec(U.lie.f(i, j)).items()}


def evaluation_xi(p: NCPoly, sign: str, N: int) -> NCPoly:
    """xi: s_ij(u) -> delta_ij + f_ij (u -/+ 1/2)^-1 on an expression in abstract s-generators."""
    if p.ctx is not S_GENS:
        raise ValueError("evaluation_xi takes an expression in abstract s-generators")
    U = g_ctx(sign, N)
    return NCPoly(U, evaluate(p.terms, lambda g: xi_s(sign, N, *S_GENS.decode(g)[1:], U=U), U))


def ev2_s(sign: str, N: int, i: int, j: int, r: int, U: EnvelopingCtx | None = None) -> dict:
    """pi_N applied to the embedded s_ij^(r)."""
    U = gl_ctx(N) if U is None else U
    if r == 0:
        return {(): ONE} if i == j else {}
    out: dict = {}
    ip = prime(sign, i)
    for a in range(1, N + 1):
        c = theta(sign, a) * theta(sign, i)
        ap = prime(sign, a)
        if r == 1:
            if ap == ip:                  # p = 0, q = 1
                for w, cc in U.e(a, j).items():
                    acc(out, w, c * cc)
            if a == j:                    # p = 1, q = 0
                for w, cc in U.e(ap, ip).items():
                    acc(out, w, -c * cc)
        elif r == 2:
            for w, cc in U.mul(U.e(ap, ip), U.e(a, j)).items():
                acc(out, w, -c * cc)
    return out


def ev2(p: NCPoly, sign: str, N: int) -> NCPoly:
    if p.ctx is not S_GENS:
        raise ValueError("ev2 takes an expression in abstract s-generators")
    U = gl_ctx(N)
    return NCPoly(U, evaluate(p.terms, lambda g: ev2_s(sign, N, *S_GENS.decode(g)[1:], U=U), U))


def counit_eps(p: NCPoly) -> mpq:
    """epsilon(e_ij) = 0: the constant term of a normal form."""
    if not isinstance(p.ctx, EnvelopingCtx):
        raise ValueError("counit_eps takes an enveloping algebra element")
    return p.constant_term()


def drop_slots(terms: dict, ctx: TensorCtx, keep: int = 0) -> dict:
    """(1 (x) eps (x) ... (x) eps): keep only words living in slot ``keep``."""
    out: dict = {}
    for w, c in terms.items():
        if all(g // (1 << 40) == keep for g in w):
            acc(out, w, c)
    return out


# -- realizations ----------------------------------------------------------------------------

class InjectedParabolic(ParabolicBase):
    """A realization pushed into one slot of a tensor context."""

    def __init__(self, base: ParabolicBase, ctx: TensorCtx, slot: int):
        if ctx.factors[slot] is not base.ctx:
            raise ValueError("slot factor does not match the base context")
        super().__init__(ctx, base.sign, base.shape, base.cutoff, base.sigma)
        self.base, self.slot = base, slot

    def _H_raw(self, a, i, j, r):
        return self.ctx.inject(self.base.H(a, i, j, r), self.slot)

    def _B_raw(self, a, i, j, r):
        return self.ctx.inject(self.base.B(a, i, j, r), self.slot)

    def Ht(self, a, i, j, r):
        return self.ctx.inject(self.base.Ht(a, i, j, r), self.slot)

    def Bba(self, b, a, i, j, r, k: int = 1):
        return self._memo(("Bba", b, a, i, j, r, k),
                          lambda: self.ctx.inject(self.base.Bba(b, a, i, j, r, k), self.slot))


def s_matrix_realization(ctx: AlgebraCtx, sign: str, N: int, cutoff: int, entry) -> GaussParabolic:
    """Shape (N) realization with H_1 = S, S_ij^(r) = entry(i, j, r)."""
    S = SeriesMatrix([[USeries(ctx, [entry(i, j, r) for r in range(cutoff + 1)])
                       for j in range(1, N + 1)] for i in range(1, N + 1)])
    return GaussParabolic(S, sign, Shape([N]), cutoff)


def baby_comultiplication(inner: ParabolicBase, sigma: ShiftMatrix | None, slot: int) -> GeneratedParabolic:
    """Delta_R over the shape of ``inner``: H_a, B_a unchanged below the last
    block, the last block twisted by U(gl_t) sitting in ``slot``.

    ``inner`` realizes the algebra with the dotted shift matrix; ``sigma`` is
    the shift matrix of the source.  With sigma = 0 and a one-block shape this
    is the plain formula (1 (x) pi) Delta on s_ij(u).
    """
    ctx = inner.ctx
    if not isinstance(ctx, TensorCtx):
        raise ValueError("baby comultiplication needs a tensor target")
    sign, shape, n = inner.sign, inner.shape, inner.n
    t = shape.parts[-1]
    U = ctx.factors[slot]
    if not isinstance(U, EnvelopingCtx) or U.lie.name != f"gl_{t}":
        raise ValueError(f"slot {slot} must hold U(gl_{t})")
    th = lambda i: theta(sign, i)
    pr = lambda i: prime(sign, i)
    e = {(p, q): ctx.inject(U.e(p, q), slot) for p in range(1, t + 1) for q in range(1, t + 1)}
    ee = {}

    def e2(a, b, c, d):
        key = (a, b, c, d)
        if key not in ee:
            ee[key] = ctx.mul(e[(a, b)], e[(c, d)])
        return ee[key]

    def H_fn(a, l, k, r):
        X = inner.H(a, l, k, r)
        if a < n:
            return X
        out = dict(X)
        for p in range(1, t + 1):
            out = dadd(out, inner.mul(inner.H(n, l, p, r - 1), e[(p, k)]))
        for q in range(1, t + 1):
            c = th(q) * th(l)
            out = dadd(out, inner.mul(inner.H(n, q, k, r - 1), e[(pr(q), pr(l))]), -c)
        if r >= 2:
            for p in range(1, t + 1):
                for q in range(1, t + 1):
                    c = th(q) * th(l)
                    out = dadd(out, inner.mul(inner.H(n, q, p, r - 2), e2(pr(q), pr(l), p, k)), -c)
        return out

    def B_fn(a, f, g, s):
        X = inner.B(a, f, g, s)
        if a < n - 1:
            return X
        out = dict(X)
        for p in range(1, t + 1):
            c = th(p) * th(f)
            out = dadd(out, inner.mul(inner.B(n - 1, p, g, s - 1), e[(pr(p), pr(f))]), -c)
        return out

    return GeneratedParabolic(ctx, sign, shape, inner.cutoff, H_fn, B_fn, sigma=sigma)


def yangian_shifted(tctx: TwistedCtx, shape, sigma: ShiftMatrix | None, cutoff: int) -> GaussParabolic:
    """The shifted algebra inside the Yangian: its generators are parabolic
    generators of Y(gl_N) at the allowed levels."""
    shape = shape if isinstance(shape, Shape) else Shape(shape)
    return GaussParabolic(tctx.S_matrix(cutoff), tctx.sign, shape, cutoff,
                          sigma=None if sigma is None else sigma.rows)


@dataclass
class DeltaRSetup:
    """Delta_R from Y(sigma) to Y(sigma dot) (x) U(gl_t), both sides realized
    through the Yangian."""

    tctx: TwistedCtx
    sigma: ShiftMatrix
    shape: Shape
    cutoff: int

    def __post_init__(self):
        t = self.shape.parts[-1]
        self.t = t
        self.sigma_dot = dot_sigma(self.sigma, minimal_shape(self.sigma)) if not self.sigma.is_zero() \
            else self.sigma
        self.ctx = TensorCtx([self.tctx.Y, gl_ctx(t)])
        self.source = yangian_shifted(self.tctx, self.shape, self.sigma, self.cutoff)
        self.dotted = yangian_shifted(self.tctx, self.shape, self.sigma_dot, self.cutoff)
        self.inner = InjectedParabolic(self.dotted, self.ctx, 0)
        self.image = baby_comultiplication(self.inner, self.sigma.rows, 1)


def delta_R_setup(sign: str, sigma, shape=None, cutoff: int = 6) -> DeltaRSetup:
    sigma = sigma if isinstance(sigma, ShiftMatrix) else ShiftMatrix.parse(sigma)
    mu = minimal_shape(sigma)
    shape = mu if shape is None else (shape if isinstance(shape, Shape) else Shape.parse(shape))
    if shape.parts[-1] != mu.parts[-1] and not sigma.is_zero():
        raise ValueError("the last block must match the minimal shape")
    return DeltaRSetup(TwistedCtx(sign, sigma.N), sigma, shape, cutoff)


def sdet_comultiplication(setup: DeltaRSetup, cutoff: int = 4) -> tuple:
    """Both sides of Delta_R(sdet H_n(u)) = sdet H_n(u) (x) pi_t(qdet T(u) qdet T(-u+t-1))."""
    n, t = setup.shape.n, setup.t
    lhs = fused_sdet(setup.image.H_series(n).map(lambda f: f.truncate(cutoff)), setup.tctx.sign)
    first = fused_sdet(setup.inner.H_series(n).map(lambda f: f.truncate(cutoff)), setup.tctx.sign)
    Yt = YangianCtx(t)
    q = series_mul(qdet(Yt, cutoff), qdet(Yt, cutoff, eps=-1, shift=-(t - 1)))
    ctx = setup.ctx
    second = USeries(ctx, [ctx.inject(evaluation_pi(q.coeff(r)).terms, 1) for r in range(cutoff + 1)])
    return lhs, series_mul(first, second)


# -- the Miura transform -----------------------------------------------------------------------

@dataclass(frozen=True)
class MiuraStep:
    kind: str              # "DeltaR", "PlainDeltaR", "FinalXi", "FinalEv2"
    level: int
    sigma: ShiftMatrix
    shape: Shape
    t: int
    slot: int


class MiuraPlan:
    """The chain of baby comultiplications down to level 1 or 2."""

    def __init__(self, tr: TruncatedCtx):
        self.tr = tr
        sign, N = tr.sign, tr.N
        sigma, level = tr.sigma, tr.level
        raw = []
        while level > 2:
            if sigma.is_zero():
                mu = Shape([N])
                raw.append(("PlainDeltaR", level, sigma, mu, N))
            else:
                mu = minimal_shape(sigma)
                raw.append(("DeltaR", level, sigma, mu, mu.parts[-1]))
                sigma = dot_sigma(sigma, mu)
            level -= 2
        if not sigma.is_zero():
            raise ValueError("shift matrix did not reach zero")
        nsteps = len(raw)
        self.steps = [MiuraStep(k, l, s, m, t, nsteps - idx) for idx, (k, l, s, m, t) in enumerate(raw)]
        final = "FinalXi" if level == 1 else "FinalEv2"
        self.steps.append(MiuraStep(final, level, sigma, Shape([N]), N, 0))
        first = g_ctx(sign, N) if level == 1 else gl_ctx(N)
        slots = [first] + [gl_ctx(st.t) for st in reversed(self.steps[:-1])]
        self.ctx = TensorCtx(slots)

    @property
    def factor_sizes(self) -> list:
        return [st.t for st in reversed(self.steps)]

    def describe(self) -> list:
        return [{"kind": s.kind, "level": s.level, "sigma": s.sigma.format(),
                 "shape": list(s.shape.parts), "t": s.t, "slot": s.slot} for s in self.steps]


class Miura:
    """Realization of the Miura transform of a truncation."""

    def __init__(self, tr: TruncatedCtx, cutoff: int):
        self.tr, self.cutoff = tr, cutoff
        self.plan = MiuraPlan(tr)
        ctx, sign, N = self.plan.ctx, tr.sign, tr.N
        final = self.plan.steps[-1]
        U = ctx.factors[0]
        if final.kind == "FinalXi":
            entry = lambda i, j, r: ctx.inject(xi_s(sign, N, i, j, r, U), 0)
        else:
            entry = lambda i, j, r: ctx.inject(ev2_s(sign, N, i, j, r, U), 0) if r <= 2 else {}
        R: ParabolicBase = s_matrix_realization(ctx, sign, N, cutoff, entry)
        for st in reversed(self.plan.steps[:-1]):
            dotted = dot_sigma(st.sigma, st.shape) if st.kind == "DeltaR" else st.sigma
            inner = R if R.shape == st.shape else RefinedParabolic(R, st.shape, sigma=dotted.rows)
            R = baby_comultiplication(inner, st.sigma.rows, st.slot)
        self.top = R
        self._refined: dict = {}

    @property
    def ctx(self) -> TensorCtx:
        return self.plan.ctx

    def realization(self, shape=None) -> ParabolicBase:
        """The transform written in the generators of ``shape`` (default minimal)."""
        if shape is None:
            return self.top
        shape = shape if isinstance(shape, Shape) else Shape(shape)
        if shape == self.top.shape:
            return self.top
        if shape not in self._refined:
            self._refined[shape] = RefinedParabolic(self.top, shape, sigma=self.tr.sigma.rows)
        return self._refined[shape]

    def apply(self, expr: NCPoly, shape=None) -> NCPoly:
        from .shifted import realize
        return NCPoly(self.ctx, realize(expr, self.realization(shape)))


def miura(expr: NCPoly, tr: TruncatedCtx, cutoff: int | None = None) -> NCPoly:
    return Miura(tr, cutoff or tr.p_block(1) + 4).apply(expr)


# -- homomorphism checks ---------------------------------------------------------------------

def _level(label) -> int:
    return label[-1]


class PBWExpander:
    """Write elements of a realization as combinations of ordered monomials in
    a list of generators, by exact elimination over all monomials of
    canonical degree (sum of levels) at most ``max_degree``."""

    def __init__(self, P: ParabolicBase, labels: list, max_degree: int):
        from .shifted import gen_value
        self.P, self.max_degree = P, max_degree
        self.labels = [g for g in labels if _level(g) <= max_degree]
        self.monomials = []
        self._grow((), 0, 0)
        self.images = {}
        self.pivots: dict = {}          # word -> (reduced vector, combination)
        self._order: list = []
        for mono in self.monomials:
            x: dict = {(): ONE}
            for g in mono:
                x = P.mul(x, gen_value(P, g))
            self.images[mono] = x
            self._insert(x, {mono: ONE})

    def _grow(self, prefix, start, deg):
        self.monomials.append(prefix)
        for k in range(start, len(self.labels)):
            d = deg + _level(self.labels[k])
            if d <= self.max_degree:
                self._grow(prefix + (self.labels[k],), k, d)

    def _reduce(self, x: dict, comb: dict):
        x, comb = dict(x), dict(comb)
        for w in self._order:
            c = x.get(w)
            if c:
                v, cv = self.pivots[w]
                for ww, cc in v.items():
                    acc(x, ww, -c * cc)
                for m, cc in cv.items():
                    acc(comb, m, -c * cc)
        return x, comb

    def _insert(self, x, comb):
        x, comb = self._reduce(x, comb)
        if not x:
            raise ValueError("monomials are linearly dependent")
        w = max(x, key=lambda u: (len(u), u))
        c = x[w]
        x = {k: v / c for k, v in x.items()}
        comb = {k: v / c for k, v in comb.items()}
        # keep earlier pivots fully reduced against the new one
        for w2 in self._order:
            v2, c2 = self.pivots[w2]
            d = v2.get(w)
            if d:
                for k, v in x.items():
                    acc(v2, k, -d * v)
                for k, v in comb.items():
                    acc(c2, k, -d * v)
        self.pivots[w] = (x, comb)
        self._order.append(w)

    def expand(self, x: dict) -> dict | None:
        """{monomial: coefficient} with sum c * monomial = x, or None."""
        rest, comb = self._reduce(x, {})
        if rest:
            return None
        return {m: -c for m, c in comb.items()}


def multiplicativity_check(source: ParabolicBase, image: ParabolicBase, labels: list,
                           pairs: int = 500, max_degree: int = 4, seed: int = 0) -> dict:
    """Delta(x) Delta(y) against Delta applied to the PBW expansion of xy.

    x and y are drawn from the ordered monomials of canonical degree at most
    ``max_degree``; the product is straightened in the source and expanded
    over monomials of degree at most ``2 * max_degree``.
    """
    import random
    from .shifted import gen_value
    rng = random.Random(seed)
    E = PBWExpander(source, labels, 2 * max_degree)
    small = [m for m in E.monomials if m and sum(map(_level, m)) <= max_degree]
    img_cache: dict = {}

    def img(mono):
        if mono not in img_cache:
            x: dict = {(): ONE}
            for g in mono:
                x = image.mul(x, gen_value(image, g))
            img_cache[mono] = x
        return img_cache[mono]

    done: dict = {}
    fails = []
    for _ in range(pairs):
        x, y = rng.choice(small), rng.choice(small)
        if (x, y) not in done:
            ok = True
            exp = E.expand(source.mul(E.images[x], E.images[y]))
            if exp is None:
                ok = False
            else:
                lhs: dict = {}
                for m, c in exp.items():
                    for w, cc in img(m).items():
                        acc(lhs, w, c * cc)
                ok = not dadd(lhs, image.mul(img(x), img(y)), -ONE)
            done[(x, y)] = ok
            if not ok:
                fails.append((x, y))
    return {"pairs": pairs, "distinct": len(done), "failures": fails,
            "monomials": len(E.monomials)}


# -- suite drivers -----------------------------------------------------------------------------

def delta_R_verify(setup: DeltaRSetup, bound: int = 4, counit_level: int = 5,
                   sdet_cutoff: int = 4, families: list | None = None) -> list:
    """Relations preserved by Delta_R, (1 (x) eps) Delta_R = inclusion, and sdet comultiplication.

    Relation instances are those whose superscripts r and s are all at most ``bound``.
    """
    import time
    from .relations import check, instances
    from .shifted import gen_value, shifted_generators
    from .twisted import Report
    sign = setup.tctx.sign
    P = setup.image
    if families is None:
        families = ["pr3", "pr4", "pr6", "Zshifted" if sign == AI else "Zshifteda2"]
    out = []
    for name in families:
        found = False
        for asg in instances(name, P, 2 * bound, shifted_z=True):
            if any(asg.get(k, 0) > bound for k in ("r", "s")):
                continue
            found = True
            out.append(check(name, P, asg))
        if not found:
            out.append(Report(name, {"bound": bound}, "skipped", note="no admissible index assignment"))
    for g in shifted_generators(sign, setup.shape, setup.sigma, counit_level):
        t0 = time.perf_counter()
        lhs = drop_slots(gen_value(P, g), setup.ctx)
        rhs = gen_value(setup.inner, g)
        diff = dadd(lhs, rhs, -ONE)
        out.append(Report("counit", {"x": label_str(g)}, "fail" if diff else "pass",
                          NCPoly(setup.ctx, diff) if diff else None, time.perf_counter() - t0))
    t0 = time.perf_counter()
    lhs, rhs = sdet_comultiplication(setup, sdet_cutoff)
    bad = [r for r in range(sdet_cutoff + 1) if dadd(lhs[r], rhs[r], -ONE)]
    out.append(Report("sdetcomul", {"cutoff": sdet_cutoff}, "fail" if bad else "pass",
                      NCPoly(setup.ctx, dadd(lhs[bad[0]], rhs[bad[0]], -ONE)) if bad else None,
                      time.perf_counter() - t0))
    return out


def miura_verify(tr: TruncatedCtx, extra: int = 4, cross: bool = True, miura: Miura | None = None) -> list:
    """The Miura transform kills every truncation-ideal generator up to level p_1 + extra,
    in the minimal shape and (with ``cross``) in every admissible shape."""
    import time
    from .shifted import admissible_shapes, truncation_ideal_generators
    from .twisted import Report
    ceiling = tr.p_block(1) + extra
    mi = miura if miura is not None else Miura(tr, ceiling)
    shapes = [tr.shape]
    if cross:
        shapes += [nu for nu in admissible_shapes(tr.sigma, sign=tr.sign) if nu != tr.shape]
    out = []
    for nu in shapes:
        trn = tr if nu == tr.shape else tr.with_shape(nu)
        for name, expr in truncation_ideal_generators(trn, ceiling):
            t0 = time.perf_counter()
            v = mi.apply(expr, None if nu == tr.shape else nu)
            out.append(Report("miura-ideal", {"generator": name, "shape": list(nu.parts)},
                              "pass" if v.is_zero() else "fail", None if v.is_zero() else v,
                              time.perf_counter() - t0))
    return out
