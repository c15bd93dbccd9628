import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from twyang.ncpoly import (ContextMismatch, EnvelopingCtx, FreeCtx, NCPoly, Q, TensorCtx, YangianCtx,
                           gl_lie, multiply, t, tensor_inject, yangian_commutator)

from oracle import PairRep

Y2 = YangianCtx(2)
REP2 = PairRep(2)


def gens(N, top):
    return st.tuples(st.integers(1, N), st.integers(1, N), st.integers(1, top))


@st.composite
def yangian_poly(draw, ctx=Y2, top=3, max_terms=3, max_len=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        word = draw(st.lists(gens(ctx.N, top), max_size=max_len))
        c = mpq(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
        p = NCPoly.scalar(ctx, c)
        for i, j, r in word:
            p = p * t(ctx, i, j, r)
        terms = (NCPoly(ctx, terms) + p).terms
    return NCPoly(ctx, terms)


def test_Q_coercion():
    assert Q("3/4") == mpq(3, 4)
    assert Q(" -2 ") == -2
    with pytest.raises(ZeroDivisionError):
        Q("1/0")


def test_level_one_bracket_is_gl():
    # [t_12^(1), t_21^(1)] = t_11^(1) - t_22^(1)
    c = t(Y2, 1, 2, 1).bracket(t(Y2, 2, 1, 1))
    assert c == t(Y2, 1, 1, 1) - t(Y2, 2, 2, 1)


def test_commutator_formula_matches_straightening():
    Y = YangianCtx(3)
    for (i, j, r, k, l, s) in [(1, 2, 2, 2, 3, 1), (1, 1, 2, 1, 1, 3), (3, 1, 2, 1, 2, 2), (2, 3, 3, 3, 2, 2)]:
        assert t(Y, i, j, r).bracket(t(Y, k, l, s)) == yangian_commutator(i, j, r, k, l, s, Y)


@settings(max_examples=40, deadline=None)
@given(yangian_poly(), yangian_poly())
def test_product_matches_representation(p, q):
    assert REP2.image(p * q) == REP2.image(p) * REP2.image(q)


@settings(max_examples=30, deadline=None)
@given(yangian_poly(max_terms=2, max_len=2), yangian_poly(max_terms=2, max_len=2),
       yangian_poly(max_terms=2, max_len=2))
def test_associative_and_jacobi(x, y, z):
    assert (x * y) * z == x * (y * z)
    jac = x.bracket(y.bracket(z)) + y.bracket(z.bracket(x)) + z.bracket(x.bracket(y))
    assert jac.is_zero()


@settings(max_examples=30, deadline=None)
@given(yangian_poly())
def test_json_round_trip(p):
    assert NCPoly.from_json(p.to_json(), Y2) == p


def test_words_are_ordered():
    p = t(Y2, 2, 2, 3) * t(Y2, 1, 1, 1)
    for w in p.terms:
        assert list(w) == sorted(w)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        t(Y2, 1, 1, 1) + t(YangianCtx(3), 1, 1, 1)
    with pytest.raises(ContextMismatch):
        multiply(t(Y2, 1, 1, 1), t(Y2, 1, 1, 1), ctx=YangianCtx(2))


def test_out_of_range_generators():
    with pytest.raises(ValueError):
        t(Y2, 3, 1, 1)
    with pytest.raises(ValueError):
        yangian_commutator(1, 1, 0, 1, 1, 1, 2)


def test_gl_lie_structure():
    L = gl_lie(3)
    assert L.dimension == 9
    assert L.check_jacobi() == [] and L.check_antisymmetry() == []


def test_enveloping_pbw():
    U = EnvelopingCtx(gl_lie(2))
    e12, e21 = NCPoly(U, U.e(1, 2)), NCPoly(U, U.e(2, 1))
    assert e12.bracket(e21) == NCPoly(U, U.e(1, 1)) - NCPoly(U, U.e(2, 2))


def test_tensor_slots_commute():
    U = EnvelopingCtx(gl_lie(2))
    T = TensorCtx([U, U])
    x = tensor_inject(NCPoly(U, U.e(1, 2)), 0, T)
    y = tensor_inject(NCPoly(U, U.e(2, 1)), 1, T)
    assert x.bracket(y).is_zero()
    assert not tensor_inject(NCPoly(U, U.e(2, 1)), 0, T).bracket(x).is_zero()


def test_free_algebra_does_not_straighten():
    F = FreeCtx()
    a, b = NCPoly.gen(F, ("a",)), NCPoly.gen(F, ("b",))
    assert a * b != b * a
    assert (a * b).bracket(a).terms
