import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from twyang.ncpoly import NCPoly, YangianCtx
from twyang.series import (CutoffError, SeriesMatrix, USeries, gamma_series, gauss_decompose, matrix_inverse,
                           matrix_mul, series_inverse, series_mul, series_substitute)

from oracle import series_coeffs, to_sympy

Y1 = YangianCtx(1)
u = sp.Symbol("u")

fracs = st.builds(lambda a, b: mpq(a, b), st.integers(-4, 4), st.integers(1, 3))


def scalar_series(vals):
    return USeries.scalars(Y1, vals)


def values(f):
    return [to_sympy(f.coeff(r).constant_term()) for r in range(f.cutoff + 1)]


def as_function(vals):
    return sum(sp.Rational(to_sympy(c)) * u ** (-n) for n, c in enumerate(vals))


@settings(max_examples=40, deadline=None)
@given(st.lists(fracs, min_size=4, max_size=6))
def test_inverse_matches_sympy(tail):
    vals = [mpq(1)] + tail
    f = scalar_series(vals)
    assert values(series_inverse(f)) == series_coeffs(1 / as_function(vals), u, len(tail))
    one = series_mul(f, series_inverse(f))
    assert values(one) == [1] + [0] * len(tail)


@settings(max_examples=40, deadline=None)
@given(st.lists(fracs, min_size=3, max_size=6), st.sampled_from([1, -1]), fracs)
def test_substitution_matches_sympy(vals, eps, shift):
    f = scalar_series(vals)
    expected = series_coeffs(as_function(vals).subs(u, eps * u - to_sympy(shift)), u, len(vals) - 1)
    assert values(series_substitute(f, eps, shift)) == expected


@pytest.mark.parametrize("c", [2, 4, 6])
def test_gamma_closed_form(c):
    assert gamma_series(c, "AI", 5) == [1, 0, 0, 0, 0, 0]
    got = [to_sympy(x) for x in gamma_series(c, "AII", 5)]
    assert got == series_coeffs((2 * u + 1) / (2 * u - c + 1), u, 5)


def test_inverse_needs_unit_constant():
    with pytest.raises(ValueError):
        series_inverse(scalar_series([mpq(2), mpq(1)]))


def test_cutoff_is_enforced():
    f = scalar_series([mpq(1), mpq(2)])
    with pytest.raises(CutoffError):
        f.coeff(5)


def t_matrix(Y, cutoff):
    return SeriesMatrix([[USeries(Y, [Y.t(i, j, r) for r in range(cutoff + 1)])
                          for j in range(1, Y.N + 1)] for i in range(1, Y.N + 1)])


def test_matrix_inverse_in_yangian():
    Y = YangianCtx(2)
    T = t_matrix(Y, 3)
    P = matrix_mul(T, matrix_inverse(T))
    for i in range(2):
        for j in range(2):
            for r in range(4):
                expect = {(): 1} if (i == j and r == 0) else {}
                assert P[i, j][r] == expect


def test_gauss_reconstructs_t():
    Y = YangianCtx(3)
    T = t_matrix(Y, 3)
    F, D, E = gauss_decompose(T, [2, 1]).full_matrices()
    R = matrix_mul(matrix_mul(F, D), E)
    for i in range(3):
        for j in range(3):
            for r in range(4):
                assert NCPoly(Y, R[i, j][r]) == NCPoly(Y, T[i, j][r])


def test_gauss_first_block_is_top_left():
    Y = YangianCtx(3)
    T = t_matrix(Y, 2)
    g = gauss_decompose(T, [2, 1])
    assert g.D[0][1, 0][1] == Y.t(2, 1, 1)
