import pytest

from twyang.conventions import AI, AII
from twyang.morphisms import yangian_shifted
from twyang.parabolic import Shape
from twyang.relations import (DrinfeldImages, check, default_families, instances, run_drinfeld, run_suite,
                              summarize)
from twyang.shifted import ShiftMatrix
from twyang.twisted import TwistedCtx


def realization(sign, N, parts, sigma=None, cutoff=5):
    sig = None if sigma is None else ShiftMatrix.parse(sigma)
    return yangian_shifted(TwistedCtx(sign, N), Shape(parts), sig, cutoff)


@pytest.mark.parametrize("sign,N,parts", [(AI, 2, [1, 1]), (AI, 2, [2]), (AII, 2, [2]), (AI, 3, [2, 1])])
def test_unshifted_suites_pass(sign, N, parts):
    P = realization(sign, N, parts)
    reps = run_suite(P, default_families(sign), 4)
    assert summarize(reps)["fail"] == 0
    assert summarize(reps)["pass"] > 0


def test_shifted_suite_passes():
    P = realization(AI, 2, [1, 1], "0,1;1,0", 6)
    reps = run_suite(P, default_families(AI) + ["Zshifted"], 4, shifted_z=True)
    assert [r for r in reps if r.status == "fail"] == []


def test_empty_family_is_skipped():
    P = realization(AI, 2, [2])
    reps = run_suite(P, ["pr-1"], 4)
    assert [r.status for r in reps] == ["skipped"]


def test_unknown_family():
    with pytest.raises(KeyError):
        list(instances("nope", realization(AI, 2, [1, 1]), 3))


def test_corruption_hook(monkeypatch):
    P = realization(AI, 2, [1, 1])
    monkeypatch.setenv("TWYANG_CORRUPT", "pr6")
    reps = run_suite(P, ["pr6"], 3)
    bad = [r for r in reps if r.status == "fail"]
    assert bad and bad[0].witness is not None
    assert bad[0].to_json()["witness"]["terms"]


def test_report_json_shape():
    P = realization(AI, 2, [1, 1])
    asg = next(instances("pr3", P, 3))
    rep = check("pr3", P, asg).to_json()
    assert set(rep) == {"relation", "assignment", "status", "witness", "seconds"}
    assert rep["status"] == "pass" and rep["witness"] is None


@pytest.mark.parametrize("sign,N", [(AI, 2), (AI, 3)])
def test_drinfeld_relations(sign, N):
    P = realization(sign, N, [1] * N, cutoff=4)
    reps = run_drinfeld(DrinfeldImages(P), 2)
    assert summarize(reps)["fail"] == 0


def test_drinfeld_needs_unit_shape():
    with pytest.raises(ValueError):
        DrinfeldImages(realization(AI, 2, [2]))
