import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from twyang.conventions import AI, AII
from twyang.parabolic import Shape
from twyang.shifted import (B, H, Pyramid, ShiftMatrix, TruncatedCtx, admissible_shapes, btilde,
                            centralizer_dimension, classify_w_type, dot_sigma, gen, lie_algebra_of,
                            minimal_shape, pyramid_to_sigma, shifted_generators, sigma_to_pyramid,
                            truncated_pbw_generators, truncation_ideal_generators, validate_shift_matrix)

WORKED = "0,0,2,3;0,0,2,3;2,2,0,1;3,3,1,0"


@st.composite
def valid_sigma_level(draw):
    """Additive shifts come from a non-increasing sequence x with x_N = 0."""
    N = draw(st.integers(1, 6))
    steps = draw(st.lists(st.integers(0, 3), min_size=N - 1, max_size=N - 1))
    x = [sum(steps[i:]) for i in range(N)]
    sigma = ShiftMatrix([[abs(x[i] - x[j]) for j in range(N)] for i in range(N)])
    level = 2 * sigma[1, N] + draw(st.integers(1, 6))
    return sigma, level


@settings(max_examples=100, deadline=None)
@given(valid_sigma_level())
def test_pyramid_round_trip(data):
    sigma, level = data
    assert validate_shift_matrix(sigma) == []
    assert pyramid_to_sigma(sigma_to_pyramid(sigma, level)) == (sigma, level)


@settings(max_examples=50, deadline=None)
@given(valid_sigma_level())
def test_pyramid_columns_count_boxes(data):
    P = sigma_to_pyramid(*data)
    assert sum(P.columns()) == P.boxes
    assert len(P.columns()) == P.level


def test_worked_example_rows():
    # [PAPER] rows (2,2,6,8) for the displayed shift matrix at level 8
    P = sigma_to_pyramid(ShiftMatrix.parse(WORKED), 8)
    assert P.rows == (2, 2, 6, 8)
    assert P.format() == "2,2,6,8"


def test_trivial_pyramid():
    assert sigma_to_pyramid(ShiftMatrix.zero(2), 5).rows == (5, 5)


def test_level_must_exceed_shift():
    with pytest.raises(ValueError):
        sigma_to_pyramid(ShiftMatrix.parse(WORKED), 6)


@pytest.mark.parametrize("rows", [(1, 2), (3, 1), (0, 2), ()])
def test_bad_pyramids(rows):
    with pytest.raises(ValueError):
        pyramid_to_sigma(Pyramid(rows))


def test_validation_messages():
    assert validate_shift_matrix(ShiftMatrix.zero(3)) == []
    assert validate_shift_matrix(ShiftMatrix.parse(WORKED)) == []
    assert "asymmetric" in validate_shift_matrix(ShiftMatrix([[0, 1], [2, 0]], check=False))[0]
    assert "additivity" in validate_shift_matrix(ShiftMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]], check=False))[0]
    with pytest.raises(ValueError):
        ShiftMatrix.parse("0,1;2,0")
    with pytest.raises(ValueError):
        ShiftMatrix.parse("0,x;1,0")


# (rows, kind) -> (type, algebra), one or more rows per case of the dispatch rule
DISPATCH = [
    ((1, 3), "orthogonal", AI, "so_4"),        # (i) orthogonal, odd level
    ((3, 3, 5), "orthogonal", AI, "so_11"),
    ((2, 2), "orthogonal", AII, "so_4"),       # (ii) orthogonal, even level
    ((2, 2, 4, 4), "orthogonal", AII, "so_12"),
    ((1, 1), "symplectic", AII, "sp_2"),       # (iii) symplectic, odd level
    ((1, 1, 3, 3), "symplectic", AII, "sp_8"),
    ((2,), "symplectic", AI, "sp_2"),          # (iv) symplectic, even level
    ((2, 2, 6, 8), "symplectic", AI, "sp_18"),
]


@pytest.mark.parametrize("rows,kind,sign,alg", DISPATCH)
def test_type_dispatch(rows, kind, sign, alg):
    P = Pyramid(rows)
    assert classify_w_type(P, kind) == (sign, alg)
    assert lie_algebra_of(sign, P.level, P.boxes) == alg


@pytest.mark.parametrize("rows,kind", [((1, 2), "orthogonal"), ((2, 4), "orthogonal"),
                                       ((1, 3), "symplectic"), ((2, 2), "unitary")])
def test_type_dispatch_errors(rows, kind):
    with pytest.raises(ValueError):
        classify_w_type(Pyramid(rows), kind)


def test_minimal_and_admissible_shapes():
    assert minimal_shape(ShiftMatrix.zero(3)).parts == (3,)
    sig = ShiftMatrix.parse(WORKED)
    assert minimal_shape(sig).parts == (2, 1, 1)
    assert [s.parts for s in admissible_shapes(sig)] == [(2, 1, 1), (1, 1, 1, 1)]
    assert [s.parts for s in admissible_shapes(ShiftMatrix.zero(4), sign=AII)] == [(4,), (2, 2)]
    assert [s.parts for s in admissible_shapes(ShiftMatrix.zero(3), max_len=2)] == [(3,), (1, 2), (2, 1)]


def test_dot_sigma():
    assert dot_sigma(ShiftMatrix([[0, 1], [1, 0]])) == ShiftMatrix.zero(2)
    d = dot_sigma(ShiftMatrix.parse(WORKED))
    assert d == ShiftMatrix.parse("0,0,2,2;0,0,2,2;2,2,0,0;2,2,0,0")
    assert validate_shift_matrix(d) == []
    with pytest.raises(ValueError):
        dot_sigma(ShiftMatrix.zero(2))


def test_unshifted_generators_are_full_set():
    labels = shifted_generators(AI, Shape([1, 1]), None, 3)
    assert set(labels) == {H(1, 1, 1, 2), H(2, 1, 1, 2), B(2, 1, 1, 1, 1), B(2, 1, 1, 1, 2), B(2, 1, 1, 1, 3)}


def test_truncated_inventory_ai2_shift1():
    # [DERIVED] p_1 = 3, p_2 = 5: B window 1 < r <= 4, H_1 up to 3, H_2 up to 5
    tr = TruncatedCtx.build(AI, 2, "0,1;1,0", 5)
    assert tr.rows == (3, 5)
    inv = truncated_pbw_generators(tr)
    assert sorted(lab[-1] for lab in inv if lab[0] == "B") == [2, 3, 4]
    assert [lab for lab in inv if lab[0] == "H"] == [H(1, 1, 1, 2), H(2, 1, 1, 2), H(2, 1, 1, 4)]


@pytest.mark.parametrize("sign,N,sigma,level", [
    (AI, 4, WORKED, 8), (AI, 2, "0,1;1,0", 5), (AI, 3, None, 3), (AII, 2, None, 2),
    (AII, 4, None, 3), (AI, 3, "0,0,1;0,0,1;1,1,0", 3), (AII, 4, "0,0,1,1;0,0,1,1;1,1,0,0;1,1,0,0", 4)])
def test_inventory_size_is_centralizer_dimension(sign, N, sigma, level):
    tr = TruncatedCtx.build(sign, N, sigma, level)
    assert len(truncated_pbw_generators(tr)) == centralizer_dimension(tr)


def test_inventory_independent_of_shape():
    tr = TruncatedCtx.build(AI, 4, WORKED, 8)
    assert len(truncated_pbw_generators(tr.with_shape([1, 1, 1, 1]))) == len(truncated_pbw_generators(tr))


def test_ideal_ai_odd():
    # [PAPER] H_{1;i,j}^(r) + 1/2 H_{1;i,j}^(r-1), r > p_1 = 3
    tr = TruncatedCtx.build(AI, 2, None, 3)
    gens = truncation_ideal_generators(tr, 5)
    assert len(gens) == 8
    name, e = gens[0]
    assert e == gen(H(1, 1, 1, 4)) + mpq(1, 2) * gen(H(1, 1, 1, 3))


def test_ideal_aii_even():
    # [PAPER] H_{1;i,j}^(r), r > 2
    tr = TruncatedCtx.build(AII, 2, None, 2)
    gens = truncation_ideal_generators(tr, 4)
    assert [e for _, e in gens] == [gen(H(1, i, j, r)) for r in (3, 4) for i in (1, 2) for j in (1, 2)]


def test_ideal_ai_even_extra_generator():
    # [DERIVED] shift 1, level 4, mu_1 = 1: Btilde with window p_1 + 1 = 3
    tr = TruncatedCtx.build(AI, 2, "0,1;1,0", 4)
    assert tr.p_block(1) == 2
    names = [n for n, _ in truncation_ideal_generators(tr, 4)]
    assert "Btilde[1;1,1]^(1;3)" in names
    bt = btilde(tr, 1, 3)
    # u^-3 of B(u + 1/2) H(u), with (u + 1/2)^-r = sum_m C(r+m-1, m) (-1/2)^m u^(-r-m)
    expect = (gen(B(2, 1, 1, 1, 4)) - gen(B(2, 1, 1, 1, 3)) + mpq(1, 4) * gen(B(2, 1, 1, 1, 2))
              + gen(B(2, 1, 1, 1, 3)) * gen(H(1, 1, 1, 1)) - mpq(1, 2) * gen(B(2, 1, 1, 1, 2)) * gen(H(1, 1, 1, 1))
              + gen(B(2, 1, 1, 1, 2)) * gen(H(1, 1, 1, 2)))
    assert bt == expect


def test_truncated_context_errors():
    with pytest.raises(ValueError):
        TruncatedCtx.build(AII, 3, None, 2)
    with pytest.raises(ValueError):
        TruncatedCtx.build(AI, 2, "0,1;1,0", 2)
    with pytest.raises(ValueError):
        TruncatedCtx.build(AI, 2, "0,1;1,0", 5, shape=[2])
    with pytest.raises(ValueError):
        TruncatedCtx.build(AII, 4, None, 3, shape=[1, 3])


def test_qtilde_and_lie_algebra():
    tr = TruncatedCtx.build(AI, 2, None, 3)
    assert tr.M == 6 and tr.m == 3
    assert tr.lie_algebra == "so_6"
    assert tr.qtilde() == [2, 2]
