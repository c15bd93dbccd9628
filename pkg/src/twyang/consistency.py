"""Consistency checks of the Gauss decomposition and the parabolic generators
inside Y(gl_N): reconstruction, iterated-bracket formulas, B against C, the
anti-automorphism tau, the automorphism zeta_N and the block factorization of
the Sklyanin determinant.
"""

from __future__ import annotations

import time

from gmpy2 import mpq

from .conventions import AI
from .ncpoly import ONE, NCPoly, dadd, dscale
from .parabolic import GaussParabolic, Shape
from .series import USeries, matrix_mul, series_mul, series_substitute
from .twisted import Report, TwistedCtx, apply_tau, fused_sdet, sdet, zeta_matrix


def _cmp(name, asg, ctx, lhs: dict, rhs: dict, t0: float, note: str = "") -> Report:
    diff = dadd(lhs, rhs, -ONE)
    return Report(name, asg, "fail" if diff else "pass", NCPoly(ctx, diff) if diff else None,
                  time.perf_counter() - t0, note)


def _shape(shape) -> Shape:
    return shape if isinstance(shape, Shape) else Shape.parse(shape) if isinstance(shape, str) else Shape(shape)


def gauss_realization(tctx: TwistedCtx, shape, cutoff: int) -> GaussParabolic:
    return GaussParabolic(tctx.S_matrix(cutoff), tctx.sign, _shape(shape).check(tctx.sign, tctx.N), cutoff)


def check_fde(tctx: TwistedCtx, shape, cutoff: int, P: GaussParabolic | None = None) -> list:
    """F D E reproduces S entrywise up to the cutoff."""
    P = P or gauss_realization(tctx, shape, cutoff)
    t0 = time.perf_counter()
    F, D, E = P.gauss.full_matrices()
    R = matrix_mul(matrix_mul(F, D), E)
    out = []
    for i in range(tctx.N):
        for j in range(tctx.N):
            for r in range(cutoff + 1):
                out.append(_cmp("FDE", {"i": i + 1, "j": j + 1, "r": r}, P.ctx,
                                R[i, j][r], P.S[i, j][r], t0))
                t0 = time.perf_counter()
    return out


def check_genlem(P: GaussParabolic, cutoff: int | None = None) -> list:
    """E_{a,b} = [E_{a,b-1}, E_{b-1}^(1)] and F_{b,a} = [F_{b-1}^(1), F_{b-1,a}] for every k."""
    cutoff = P.cutoff if cutoff is None else cutoff
    out = []
    mu, n = P.mu, P.n
    for a in range(1, n + 1):
        for b in range(a + 2, n + 1):
            for r in range(1, cutoff + 1):
                for i in range(1, mu[a - 1] + 1):
                    for j in range(1, mu[b - 1] + 1):
                        for k in range(1, mu[b - 2] + 1):
                            asg = {"a": a, "b": b, "i": i, "j": j, "k": k, "r": r}
                            t0 = time.perf_counter()
                            rhs = P.bracket(P.E(a, b - 1, i, k, r), P.E(b - 1, b, k, j, 1))
                            out.append(_cmp("efgen-E", asg, P.ctx, P.E(a, b, i, j, r), rhs, t0))
                            t0 = time.perf_counter()
                            rhs = P.bracket(P.F(b, b - 1, j, k, 1), P.F(b - 1, a, k, i, r))
                            out.append(_cmp("efgen-F", asg, P.ctx, P.F(b, a, j, i, r), rhs, t0))
    return out


def check_k_independence(P: GaussParabolic, cutoff: int | None = None) -> list:
    """The iterated-bracket B_{b,a} agrees with the Gauss block for every auxiliary k."""
    cutoff = P.cutoff if cutoff is None else cutoff
    out = []
    mu, n = P.mu, P.n
    for a in range(1, n + 1):
        for b in range(a + 2, n + 1):
            for r in range(1, cutoff + 1):
                for i in range(1, mu[b - 1] + 1):
                    for j in range(1, mu[a - 1] + 1):
                        direct = P.Bba_direct(b, a, i, j, r)
                        for k in range(1, mu[b - 2] + 1):
                            t0 = time.perf_counter()
                            out.append(_cmp("k-independence", {"a": a, "b": b, "i": i, "j": j, "k": k, "r": r},
                                            P.ctx, P.Bba(b, a, i, j, r, k), direct, t0))
    if not out:
        out.append(Report("k-independence", {"shape": list(mu)}, "skipped",
                          note="needs three or more blocks"))
    return out


def check_b_eq_c(P: GaussParabolic, cutoff: int | None = None) -> list:
    """B_{b,a}(u) against C_{a,b}(-u): AI B_{b,a;l,k} = C_{a,b;k,l}(-u),
    AII B_{b,a;i,j} = theta_i theta_j C_{a,b;j',i'}(-u)."""
    cutoff = P.cutoff if cutoff is None else cutoff
    out = []
    mu, n = P.mu, P.n
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for i in range(1, mu[b - 1] + 1):
                for j in range(1, mu[a - 1] + 1):
                    for r in range(1, cutoff + 1):
                        t0 = time.perf_counter()
                        if P.sign == AI:
                            c, rhs = (-1) ** r, P.Cab(a, b, j, i, r)
                        else:
                            c, rhs = (-1) ** r * P.th(i) * P.th(j), P.Cab(a, b, P.pr(j), P.pr(i), r)
                        out.append(_cmp("BeqC", {"a": a, "b": b, "i": i, "j": j, "r": r}, P.ctx,
                                        P.Bba_direct(b, a, i, j, r), dscale(rhs, mpq(c)), t0))
    return out


def check_tauimg(tctx: TwistedCtx, P: GaussParabolic, cutoff: int | None = None) -> list:
    """tau(D_{a;i,j}) = D_{a;j,i}, tau(E_{a,b;i,j}) = F_{b,a;j,i} and tau(F) = E.

    In type AII each image picks up theta_i theta_j and primed indices, as
    tau(s_ij(u)) = theta_i theta_j s_j'i'(u) does.
    """
    cutoff = P.cutoff if cutoff is None else cutoff
    Y = tctx.Y
    out = []
    mu, n = P.mu, P.n

    def tau(x):
        return apply_tau(NCPoly(Y, x), tctx).terms

    def tw(i, j):
        if P.sign == AI:
            return j, i, ONE
        return P.pr(j), P.pr(i), mpq(P.th(i) * P.th(j))
    for a in range(1, n + 1):
        for i in range(1, mu[a - 1] + 1):
            for j in range(1, mu[a - 1] + 1):
                p, q, c = tw(i, j)
                for r in range(1, cutoff + 1):
                    t0 = time.perf_counter()
                    out.append(_cmp("tauimg-D", {"a": a, "i": i, "j": j, "r": r}, Y,
                                    tau(P.D(a, i, j, r)), dscale(P.D(a, p, q, r), c), t0))
        for b in range(a + 1, n + 1):
            for i in range(1, mu[a - 1] + 1):
                for j in range(1, mu[b - 1] + 1):
                    p, q, c = tw(i, j)
                    for r in range(1, cutoff + 1):
                        asg = {"a": a, "b": b, "i": i, "j": j, "r": r}
                        t0 = time.perf_counter()
                        out.append(_cmp("tauimg-E", asg, Y, tau(P.E(a, b, i, j, r)),
                                        dscale(P.F(b, a, p, q, r), c), t0))
                        t0 = time.perf_counter()
                        out.append(_cmp("tauimg-F", asg, Y, tau(P.F(b, a, j, i, r)),
                                        dscale(P.E(a, b, q, p, r), c), t0))
    return out


def check_zeta(tctx: TwistedCtx, shape, cutoff: int) -> list:
    """zeta_N against the reversed shape (type AI):

        zeta_N(D_{a;i,j}(u)) = D~_{n+1-a;m+1-i,m+1-j}(-u - N/2),   m = mu_a,
        zeta_N(B_{a;l,k}(u)) = -B_{n-a;mu_a+1-k, mu_{a+1}+1-l}(u),
        zeta_N(H_{a;i,j}(u)) = H~_{n+1-a;m+1-i,m+1-j}(-u - m/2).

    The last line is what the first one gives after the spectral shifts
    defining H and H~.
    """
    if tctx.sign != AI:
        raise NotImplementedError("zeta_N is only available in type AI")
    shape = _shape(shape)
    mu, n, N = shape.parts, shape.n, tctx.N
    Pz = GaussParabolic(zeta_matrix(tctx, cutoff), AI, shape, cutoff)
    Pbar = gauss_realization(tctx, Shape(list(reversed(mu))), cutoff)
    out = []
    for a in range(1, n + 1):
        m = mu[a - 1]
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                t0 = time.perf_counter()
                fD = series_substitute(Pbar.gauss.Dt[n - a][m - i, m - j], -1, mpq(N, 2))
                fH = series_substitute(Pbar.Ht_series(n + 1 - a)[m - i, m - j], -1, mpq(m, 2))
                for r in range(1, cutoff + 1):
                    asg = {"a": a, "i": i, "j": j, "r": r}
                    out.append(_cmp("zetapro-D", asg, tctx.Y, Pz.gauss.D[a - 1][i - 1, j - 1][r], fD[r], t0))
                    t0 = time.perf_counter()
                    out.append(_cmp("zetapro-H", asg, tctx.Y, Pz.H(a, i, j, r), fH[r], t0))
                    t0 = time.perf_counter()
    for a in range(1, n):
        for l in range(1, mu[a] + 1):
            for k in range(1, mu[a - 1] + 1):
                for r in range(1, cutoff + 1):
                    t0 = time.perf_counter()
                    rhs = dscale(Pbar.B(n - a, mu[a - 1] + 1 - k, mu[a] + 1 - l, r), -ONE)
                    out.append(_cmp("zetapro-B", {"a": a, "l": l, "k": k, "r": r}, tctx.Y,
                                    Pz.B(a, l, k, r), rhs, t0))
    return out


def block_sdet_product(P: GaussParabolic, blocks: str = "H") -> USeries:
    """prod_a sdet H_a(u - mu_(a-1)/2), or with blocks="D" prod_a sdet D_a(u - mu_(a-1)).

    The two agree in type AI.  In type AII only the H form reproduces sdet S(u):
    the Sklyanin determinant has to be taken of a matrix obeying the
    reflection equation, which H_a does and D_a does not.
    """
    rhs = None
    for a in range(1, P.n + 1):
        if blocks == "H":
            f = series_substitute(fused_sdet(P.H_series(a), P.sign), 1, mpq(P.shape.psum[a - 1], 2))
        else:
            f = series_substitute(fused_sdet(P.gauss.D[a - 1], P.sign), 1, P.shape.psum[a - 1])
        rhs = f if rhs is None else series_mul(rhs, f)
    return rhs


def check_sdetdecomp(tctx: TwistedCtx, shape, cutoff: int, P: GaussParabolic | None = None,
                     blocks: str = "H") -> list:
    """sdet S(u) against the product of block determinants, coefficientwise."""
    P = P or gauss_realization(tctx, shape, cutoff)
    t0 = time.perf_counter()
    lhs = sdet(tctx, cutoff)
    rhs = block_sdet_product(P, blocks)
    out = []
    for r in range(cutoff + 1):
        out.append(_cmp("sdetdecomp", {"r": r, "shape": list(P.mu), "blocks": blocks}, tctx.Y, lhs[r], rhs[r], t0))
        t0 = time.perf_counter()
    return out


def gauss_suite(sign: str, N: int, shape, cutoff: int = 6, tau_cutoff: int = 5) -> list:
    """Reconstruction, iterated brackets, k-independence, B = C and tau (plus zeta in type AI)."""
    tctx = TwistedCtx(sign, N)
    P = gauss_realization(tctx, shape, cutoff)
    out = check_fde(tctx, shape, cutoff, P)
    out += check_genlem(P, cutoff)
    out += check_k_independence(P, cutoff)
    out += check_b_eq_c(P, cutoff)
    out += check_tauimg(tctx, P, min(cutoff, tau_cutoff))
    if sign == AI:
        out += check_zeta(tctx, shape, tau_cutoff)
    return out
