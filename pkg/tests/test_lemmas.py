from fractions import Fraction

import pytest

from fourfold.arith import PiQuantity
from fourfold.errors import InvalidParameters, UnknownFormulaId
from fourfold.lemmas import FORMULAS, lemma_check, summand_from_spec

GOMPF_GRID = {"alpha": range(2, 11), "beta": range(0, 11)}


@pytest.mark.parametrize("fid", ["gompf-bplus", "gompf-2e+3s", "gompf-2e-3s"])
def test_gompf_identities(fid):
    rep = lemma_check(fid, GOMPF_GRID)
    assert len(rep.rows) == 99
    assert rep.all_zero


def test_simplicial_volume_zero():
    rep = lemma_check("simplicial-volume", {"g": [3, 5], "h": [3, 5], "j": 1, "k": 1})
    assert len(rep.rows) == 4
    assert rep.all_zero
    rep = lemma_check("simplicial-volume", {"g": range(1, 8), "h": range(1, 8), "k": [1, 2, 3],
                                            "x": ["k3", "surface-product:3:5", "gompf:2:2"]})
    assert rep.all_zero


@pytest.mark.parametrize("fid", ["sum-2e+3s", "sum-2e-3s"])
def test_sum_residual_reported(fid):
    rep = lemma_check(fid, {"g": 3, "h": 3, "j": 1, "k": 1, "x": "k3", "l1": 1, "l2": 1})
    assert rep.residuals() == [PiQuantity(-16)]
    assert not rep.all_zero


@pytest.mark.parametrize("fid", ["sum-2e+3s", "sum-2e-3s"])
def test_sum_residual_shape(fid):
    grid = {"g": [3, 5, 7], "h": [3, 4, 9], "k": [1, 2], "j": [1, 2], "l1": [0, 3], "l2": [0, 5]}
    for row in lemma_check(fid, grid).rows:
        p = dict(row.point)
        assert row.residual == PiQuantity(-4 * p["k"] * (p["g"] - 1) * (p["h"] - 1))


def test_entropy_bounds():
    up = lemma_check("entropy-upper", {"g": [3, 5], "h": [3, 7]})
    for row in up.rows:
        p = dict(row.point)
        assert row.residual == PiQuantity(Fraction(-(p["g"] - 1) * (p["h"] - 1), 27))
    assert lemma_check("entropy-lower", {"g": [3, 5], "h": [3, 7]}).all_zero


def test_corollary_n():
    rep = lemma_check("corollary-n", {"l1": [0, 1, 4], "l2": [1, 2, 3]})
    for row in rep.rows:
        p = dict(row.point)
        assert row.residual == PiQuantity(p["l2"] - p["l1"])


def test_corollary_threshold():
    rep = lemma_check("corollary-threshold", {"g": 3, "h": 3})
    assert rep.residuals() == [PiQuantity(Fraction(-16, 3))]


def test_band_gaps_zero():
    assert lemma_check("band-gap", {"g": [3, 5, 7], "h": [3, 9], "variant": [1295, 81],
                                    "x": ["k3", "surface-product:3:3"]}).all_zero
    assert lemma_check("band-gap-mu", {"g": [3, 5], "h": [3, 5], "alpha": [2, 3], "beta": [0, 2, 4]}).all_zero


def test_unknown_id():
    with pytest.raises(UnknownFormulaId):
        lemma_check("no-such-formula")


def test_unknown_parameter():
    with pytest.raises(InvalidParameters):
        lemma_check("gompf-bplus", {"g": 3})


def test_defaults_single_row():
    for fid in FORMULAS:
        rep = lemma_check(fid)
        assert len(rep.rows) == 1
        obj = rep.to_json()
        assert obj["formula"] == fid and len(obj["rows"]) == 1


def test_summand_spec():
    assert summand_from_spec("k3").euler == 24
    assert summand_from_spec("surface-product:3:3").simplicial_volume.value == 96
    assert summand_from_spec("gompf:2:2").c1sq == 16
