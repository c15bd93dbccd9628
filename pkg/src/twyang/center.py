"""Central elements of truncations: the series Z_M(u) and the Pfaffian candidate.

Everything is checked after the Miura transform.  The Sklyanin determinant
of the truncation is the block product

    C_N(u) = prod_a sdet H_a(u - mu_(a-1)/2)

taken in the Miura realization, so its image is computed exactly rather
than read off a closed formula; the closed formula is kept as a cross-check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from gmpy2 import mpq

from .conventions import AI, AII
from .morphisms import Miura, evaluation_pi, gl_ctx
from .ncpoly import ONE, ZERO, NCPoly, acc, dadd, dscale
from .series import USeries, gamma_series, series_mul, series_substitute, substitution_weights
from .shifted import (Shape, TruncatedCtx, btilde, gen, label_str, realize, truncated_pbw_generators)
from .twisted import Report, TwistedCtx, fused_sdet, qdet
from .ncpoly import YangianCtx


# -- scalar series and polynomials ------------------------------------------------------------

def _smul(f: list, g: list) -> list:
    D = min(len(f), len(g)) - 1
    return [sum((f[s] * g[r - s] for s in range(r + 1)), ZERO) for r in range(D + 1)]


def _sinv(f: list) -> list:
    if f[0] != 1:
        raise ValueError("constant term must be 1")
    g = [ONE]
    for r in range(1, len(f)):
        g.append(-sum((f[t] * g[r - t] for t in range(1, r + 1)), ZERO))
    return g


def _pmul(p: list, q: list) -> list:
    """Polynomials as ascending coefficient lists."""
    out = [ZERO] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        for b, y in enumerate(q):
            out[a + b] += x * y
    return out


def rho(sign: str, N: int) -> list:
    """The shifts rho_i, i = -n..n (0 only when N is odd)."""
    n = N // 2
    out = []
    for i in range(1, n + 1):
        if sign == AI:
            v = mpq(i - 1) if N % 2 == 0 else mpq(2 * i - 1, 2)
        else:
            v = mpq(i)
        out += [v, -v]                     # rho_{-i} = v, rho_i = -v
    if N % 2:
        out.append(mpq(1, 2))
    return out


def prefactor(tr: TruncatedCtx) -> list:
    """The scalar polynomial multiplying C_N(u + (N-1)/2) in Z_M(u)."""
    q = tr.qtilde()
    P = [ONE]
    for qi in q[1:]:
        for j in range(1, qi + 1):
            c = mpq(qi + 1, 2) - j
            P = _pmul(P, [c * c, ZERO, -ONE])
    if tr.odd:
        for r in rho(tr.sign, tr.N):
            P = _pmul(P, [r, ONE])
    return P


# -- the center series ------------------------------------------------------------------------

@dataclass
class CenterSeries:
    tr: TruncatedCtx
    extra: int
    miura: Miura
    chi_C: USeries                       # image of C_N(u) to cutoff M + extra
    weights: list = field(default_factory=list)   # z_k = sum_r weights[k][r] c_r
    negative: list = field(default_factory=list)  # u^-j coefficient weights, j = 1..extra
    sign_normalization: int = 1

    @property
    def M(self) -> int:
        return self.tr.M

    def _combine(self, w) -> NCPoly:
        out: dict = {}
        for r, c in enumerate(w):
            if c:
                for ww, cc in self.chi_C[r].items():
                    acc(out, ww, c * cc)
        return NCPoly(self.chi_C.ctx, out)

    def z(self, k: int) -> NCPoly:
        """Miura image of z_k, with z_0 = 1."""
        return self._combine(self.weights[k])

    def tail(self, j: int) -> NCPoly:
        """Miura image of the u^-j coefficient; zero when Z_M is a polynomial."""
        return self._combine(self.negative[j - 1])


def chi_sdet(mi: Miura, cutoff: int) -> USeries:
    """Miura image of C_N(u) through the block product of Sklyanin determinants."""
    R = mi.top
    out = None
    for a in range(1, R.n + 1):
        block = R.H_series(a).map(lambda f: f.truncate(cutoff))
        f = series_substitute(fused_sdet(block, R.sign), 1, mpq(R.shape.psum[a - 1], 2))
        out = f if out is None else series_mul(out, f)
    return out


def chi_sdet_closed_form(mi: Miura, cutoff: int) -> USeries:
    """C_{q0}(u) (x) prod_i B_{qi}(u - (N - qi)/2) B_{qi}(-u + (N + qi)/2 - 1)."""
    ctx, N, sign = mi.ctx, mi.tr.N, mi.tr.sign
    final = mi.plan.steps[-1]
    from .morphisms import s_matrix_realization, xi_s, ev2_s
    U = ctx.factors[0]
    if final.kind == "FinalXi":
        R0 = s_matrix_realization(ctx, sign, N, cutoff, lambda i, j, r: ctx.inject(xi_s(sign, N, i, j, r, U), 0))
    else:
        R0 = s_matrix_realization(ctx, sign, N, cutoff,
                                  lambda i, j, r: ctx.inject(ev2_s(sign, N, i, j, r, U), 0) if r <= 2 else {})
    out = fused_sdet(R0.H_series(1), sign)
    for st in mi.plan.steps[:-1]:
        t = st.t
        Yt = YangianCtx(t)
        q = series_mul(qdet(Yt, cutoff, eps=1, shift=mpq(N - t, 2)),
                       qdet(Yt, cutoff, eps=-1, shift=-(mpq(N + t, 2) - 1)))
        f = USeries(ctx, [ctx.inject(evaluation_pi(q.coeff(r)).terms, st.slot) for r in range(cutoff + 1)])
        out = series_mul(out, f)
    return out


def center_series(tr: TruncatedCtx, extra: int = 3, miura: Miura | None = None,
                  with_gamma: bool = True) -> CenterSeries:
    M, N = tr.M, tr.N
    D = M + extra
    mi = miura if miura is not None and miura.cutoff >= D else Miura(tr, D)
    C = chi_sdet(mi, D)
    # F(u) = gamma(u + (N-1)/2)^-1 C(u + (N-1)/2) = sum_j F_j u^-j, F_j = sum_r Wf[j][r] c_r.
    # gamma is 1 for AI; for AII it is needed at every level, even ones included.
    W = substitution_weights(1, -mpq(N - 1, 2), D)
    if with_gamma:
        g = gamma_series(N, tr.sign, D)
        gs = [sum((W[n][r] * g[r] for r in range(n + 1)), ZERO) for n in range(D + 1)]
        ginv = _sinv(gs)
    else:
        ginv = [ONE] + [ZERO] * D
    Wf = [[sum((ginv[s] * W[j - s][r] for s in range(j + 1)), ZERO) for r in range(D + 1)]
          for j in range(D + 1)]
    P = prefactor(tr)
    if len(P) - 1 != M:
        raise AssertionError(f"prefactor degree {len(P) - 1} differs from M = {M}")
    lead = P[M]
    weights = []
    for k in range(M + 1):
        w = [ZERO] * (D + 1)
        for e in range(M - k, M + 1):
            for r in range(D + 1):
                w[r] += P[e] * Wf[e - M + k][r]
        weights.append([x / lead for x in w])
    negative = []
    for j in range(1, extra + 1):
        w = [ZERO] * (D + 1)
        for e in range(M + 1):
            for r in range(D + 1):
                w[r] += P[e] * Wf[e + j][r]
        negative.append([x / lead for x in w])
    return CenterSeries(tr, extra, mi, C, weights, negative, int(lead))


def canonical_degree(p: NCPoly) -> int:
    """Top word length in a tensor product of enveloping algebras (Lie generators in degree 1)."""
    return max((len(w) for w in p.terms), default=-1)


def _timed(name, asg, fn) -> Report:
    t0 = time.perf_counter()
    status, witness, note = fn()
    return Report(name, asg, status, witness, time.perf_counter() - t0, note)


def center_verify(tr: TruncatedCtx, extra: int = 3, cs: CenterSeries | None = None) -> list:
    """Polynomiality of Z_M, centrality and canonical degree of each z_2k."""
    cs = center_series(tr, extra) if cs is None else cs
    mi = cs.miura
    R = mi.top
    out = []
    for j in range(1, extra + 1):
        v = cs.tail(j)
        out.append(Report("Z-polynomial", {"power": -j}, "pass" if v.is_zero() else "fail",
                          None if v.is_zero() else v))
    gens = [(label_str(g), NCPoly(mi.ctx, realize(gen(g), R))) for g in truncated_pbw_generators(tr)]
    for k in range(2, 2 * tr.m + 1, 2):
        z = cs.z(k)

        def central(z=z):
            for name, g in gens:
                c = z.bracket(g)
                if not c.is_zero():
                    return "fail", c, f"fails against {name}"
            return "pass", None, f"{len(gens)} generators"
        out.append(_timed("z-central", {"k": k}, central))
        deg = canonical_degree(z)
        out.append(Report("z-degree", {"k": k, "degree": deg}, "pass" if deg == k else "fail"))
    return out


# -- the Pfaffian candidate --------------------------------------------------------------------

def pfaffian_shape(tr: TruncatedCtx) -> TruncatedCtx:
    if tr.N != 2:
        raise ValueError("the Pfaffian candidate is defined for N = 2")
    return tr if tr.shape.parts == (1, 1) else tr.with_shape(Shape([1, 1]))


def pfaffian_candidate(tr: TruncatedCtx, i: int = 1, k: int | None = None) -> NCPoly:
    """B~_{1;i,1}^(s12; k) with k = p_1 by default, or p_1 + 1."""
    tr2 = pfaffian_shape(tr)
    p1 = tr2.p_block(1)
    k = p1 if k is None else k
    if k not in (p1, p1 + 1):
        raise ValueError(f"window index must be p_1 = {p1} or p_1 + 1")
    return btilde(tr2, i, k)


def pfaffian_verify(tr: TruncatedCtx, k: int | None = None, miura: Miura | None = None) -> list:
    if tr.sign != AI or tr.N != 2 or not tr.odd:
        raise ValueError("Pfaffian generators are checked for type AI, N = 2 and odd level")
    tr2 = pfaffian_shape(tr)
    p1 = tr2.p_block(1)
    k = p1 if k is None else k
    mi = miura if miura is not None else Miura(tr, max(p1 + 4, tr.level + 2))
    pf = pfaffian_candidate(tr, 1, k)
    img = mi.apply(pf, shape=Shape([1, 1]))
    R = mi.top
    gens = [(label_str(g), NCPoly(mi.ctx, realize(gen(g), R))) for g in truncated_pbw_generators(tr)]
    asg = {"window": k, "s12": tr2.shift(1, 2), "level": tr.level}
    out = []

    def central():
        for name, g in gens:
            c = img.bracket(g)
            if not c.is_zero():
                return "fail", c, f"fails against {name}"
        return "pass", None, f"{len(gens)} generators"
    out.append(_timed("pf-central", asg, central))
    out.append(Report("pf-nonzero", asg, "fail" if img.is_zero() else "pass"))
    deg = canonical_degree(img)
    out.append(Report("pf-degree", dict(asg, degree=deg, m=tr.m), "pass" if deg == tr.m else "fail"))
    if tr.sigma.is_zero() and k == p1:
        out.append(pfaffian_base_case(tr, k))
    out.append(Report("pf-algebraic-independence", asg, "skipped",
                      note="not certified; leading monomials available via search mode"))
    return out


def pfaffian_base_case(tr: TruncatedCtx, k: int | None = None) -> Report:
    """For sigma = 0 the candidate is -s_12^(l) inside the Yangian."""
    from .morphisms import yangian_shifted
    tctx = TwistedCtx(AI, 2)
    k = tr.level if k is None else k
    P = yangian_shifted(tctx, Shape([1, 1]), None, k + 1)
    x = realize(pfaffian_candidate(tr, 1, k), P)
    target = dscale(tctx.s(1, 2, tr.level), -ONE)
    diff = dadd(x, target, -ONE)
    return Report("pf-equals-minus-s12", {"level": tr.level, "window": k},
                  "fail" if diff else "pass", NCPoly(tctx.Y, diff) if diff else None)


def leading_monomials(p: NCPoly, count: int = 10) -> list:
    """Search mode: the longest words of a Miura image, for inspection by hand."""
    top = canonical_degree(p)
    rows = [(w, c) for w, c in p.sorted_terms() if len(w) == top]
    return [(" ".join(p.ctx.sym_str(g) for g in w), str(c)) for w, c in rows[:count]]
