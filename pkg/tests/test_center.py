import pytest
from gmpy2 import mpq

from twyang.center import (canonical_degree, center_series, center_verify, leading_monomials, pfaffian_base_case,
                           pfaffian_candidate, pfaffian_verify, prefactor, rho)
from twyang.conventions import AI, AII
from twyang.shifted import TruncatedCtx


def failures(reps):
    return [r for r in reps if r.status == "fail"]


def test_rho():
    # [TRIVIAL]
    assert rho(AI, 3) == [mpq(1, 2), mpq(-1, 2), mpq(1, 2)]
    assert rho(AI, 2) == [0, 0]
    assert rho(AII, 4) == [1, -1, 2, -2]


@pytest.mark.parametrize("sign,N,sigma,level", [(AI, 2, None, 3), (AII, 2, None, 2), (AI, 2, "0,1;1,0", 5),
                                                (AII, 4, None, 3), (AI, 3, None, 3)])
def test_prefactor_degree_is_M(sign, N, sigma, level):
    tr = TruncatedCtx.build(sign, N, sigma, level)
    assert len(prefactor(tr)) - 1 == tr.M


def test_prefactor_aii2_level2():
    # [DERIVED] qtilde = (2, 2): (1/4 - u^2)^2
    tr = TruncatedCtx.build(AII, 2, None, 2)
    assert prefactor(tr) == [mpq(1, 16), 0, mpq(-1, 2), 0, 1]


@pytest.mark.parametrize("sign,N,sigma,level", [(AI, 2, None, 3), (AII, 2, None, 2), (AI, 2, "0,1;1,0", 5)])
def test_center_small(sign, N, sigma, level):
    tr = TruncatedCtx.build(sign, N, sigma, level)
    reps = center_verify(tr, extra=3)
    assert failures(reps) == []
    assert {r.relation for r in reps} == {"Z-polynomial", "z-central", "z-degree"}


def test_center_needs_gamma_in_aii():
    # without the gamma normalization Z_M picks up a u^-1 tail
    tr = TruncatedCtx.build(AII, 2, None, 2)
    cs = center_series(tr, 3, with_gamma=False)
    assert not cs.tail(1).is_zero()
    assert all(center_series(tr, 3).tail(j).is_zero() for j in (1, 2, 3))


def test_z2_leading_words():
    tr = TruncatedCtx.build(AI, 2, None, 3)
    cs = center_series(tr, 3)
    z2 = cs.z(2)
    assert canonical_degree(z2) == 2
    assert leading_monomials(z2, 1) == [("f[1,2]@0 f[1,2]@0", "1")]
    assert cs.z(0) == z2.scalar(z2.ctx, 1)


@pytest.mark.parametrize("sigma,level", [(None, 3), ("0,1;1,0", 5)])
def test_pfaffian(sigma, level):
    tr = TruncatedCtx.build(AI, 2, sigma, level)
    reps = pfaffian_verify(tr)
    assert failures(reps) == []
    assert any(r.relation == "pf-central" and r.status == "pass" for r in reps)


def test_pfaffian_upper_window_is_central_too():
    tr = TruncatedCtx.build(AI, 2, None, 3)
    assert failures(pfaffian_verify(tr, k=tr.p_block(1) + 1)) == []


def test_pfaffian_base_case():
    # [PAPER] with zero shift the candidate is -s_12^(l)
    assert pfaffian_base_case(TruncatedCtx.build(AI, 2, None, 5)).status == "pass"


def test_pfaffian_errors():
    with pytest.raises(ValueError):
        pfaffian_verify(TruncatedCtx.build(AI, 2, None, 4))
    with pytest.raises(ValueError):
        pfaffian_verify(TruncatedCtx.build(AII, 2, None, 3))
    with pytest.raises(ValueError):
        pfaffian_candidate(TruncatedCtx.build(AI, 3, None, 3))
    with pytest.raises(ValueError):
        pfaffian_candidate(TruncatedCtx.build(AI, 2, None, 3), k=7)
