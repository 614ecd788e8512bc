from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourfold.arith import PiQuantity, pq_sign, use_pi2_interval, certified_pi2_interval
from fourfold.blocks import HomotopyK3, SurfaceProduct, make_block
from fourfold.errors import InvalidParameters, PreconditionFailed
from fourfold.families import (
    MU_COEF,
    WitnessQuery,
    band_gap_stated,
    decimal,
    find_witnesses,
    kappa_constant,
    mu_margins,
    re_margins,
    tail_summand,
    witnesses_csv,
)
from fourfold.manifold import CertKind
from fourfold.obstructions import property_check

from . import oracles

C = CertKind


def _data(parts):
    sm = sum(2 * x.euler - 3 * x.signature for x in parts)
    sp = sum(x.c1sq for x in parts)
    vol = sum(x.simplicial_volume.value for x in parts)
    return sm, sp, vol


def test_kappa_values():
    assert kappa_constant(1, 7).is_zero
    k = kappa_constant(3, 3)
    assert k == PiQuantity(16, 0, Fraction(-96, 1295))
    assert pq_sign(k) == 1
    assert decimal(k) == "15.9924"
    assert oracles.evaluate(k.c0, k.c2, k.cm2) == pytest.approx(15.99249, abs=1e-5)
    k81 = kappa_constant(3, 3, 81)
    assert decimal(k81) == "15.8799"


@pytest.mark.parametrize("g,h", [(0, 3), (3, 0)])
def test_kappa_rejects_small(g, h):
    with pytest.raises(InvalidParameters):
        kappa_constant(g, h)


def test_kappa_rejects_variant():
    with pytest.raises(InvalidParameters):
        kappa_constant(3, 3, 54)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), st.integers(2, 40), st.sampled_from([1295, 81]))
def test_kappa_positive(g, h, c):
    assert pq_sign(kappa_constant(g, h, c)) == 1


def test_query_validation(sp33, k3):
    with pytest.raises(InvalidParameters):
        WitnessQuery("Q", (sp33,), 5, 5, 5, 5)
    with pytest.raises(InvalidParameters):
        WitnessQuery("Mu", (k3, k3), 5, 5, 5, 5)
    with pytest.raises(InvalidParameters):
        WitnessQuery("R", (sp33,) * 3, 5, 5, 5, 5)
    assert WitnessQuery("mu", (k3,), 5, 5, 5, 5).kind == "Mu"
    assert WitnessQuery("Mu", (k3,), 5, 5, 5, 5).j == 2


def test_non_admissible_summand():
    with pytest.raises(PreconditionFailed):
        find_witnesses(WitnessQuery("R", (make_block(SurfaceProduct(2, 2)),), 5, 5, 5, 5))


@pytest.fixture(scope="module")
def r_grid(sp33):
    q = WitnessQuery("R", (sp33, sp33), 9, 9, 20, 20, assemble=False)
    return find_witnesses(q)


def test_r_matches_brute_force(r_grid, sp33):
    sm, sp, vol = _data([sp33, sp33])
    assert (sm, sp, vol) == (64, 64, 192)
    expect = oracles.brute_force_re(sm, sp, vol, 2, 1295, 9, 9, 20, 20)
    assert [w.params for w in r_grid] == expect
    assert not r_grid.undecided


def test_r_lexicographic(r_grid):
    ps = [w.params for w in r_grid]
    assert ps == sorted(ps)
    assert ps[0] == (3, 3, 1, 15)


def test_small_grid_contains_worked_example(sp33):
    ws = find_witnesses(WitnessQuery("R", (sp33, sp33), 5, 5, 12, 4))
    by = {w.params: w for w in ws}
    w = by[(5, 5, 9, 1)]
    assert w.band_value == 45
    assert w.band_lower == PiQuantity(Fraction(128, 3))
    assert w.band_upper == PiQuantity(128, 0, Fraction(-576, 1295))
    assert decimal(w.band_upper, 2) == "127.95"
    assert decimal(w.band_lower, 2) == "42.66"
    for name, m in w.margins:
        assert pq_sign(m) == 1
        assert oracles.evaluate(m.c0, m.c2, m.cm2) > 0
    assert [x.params for x in ws] == oracles.brute_force_re(64, 64, 192, 2, 1295, 5, 5, 12, 4)
    assert ws[0].params == (3, 3, 4, 3)


def test_first_is_lexicographic_minimum(sp33, r_grid):
    ws = find_witnesses(WitnessQuery("R", (sp33, sp33), 9, 9, 20, 20), first=True)
    assert len(ws) == 1 and ws[0].params == r_grid[0].params


def test_empty_bounds(sp33):
    q = WitnessQuery("R", (sp33, sp33), 3, 3, 0, 0, l1_min=0, l2_min=0)
    assert find_witnesses(q) == []
    assert find_witnesses(WitnessQuery("R", (sp33, sp33), 3, 3, 0, 0)) == []


def test_assembled_witness(sp33):
    w = find_witnesses(WitnessQuery("R", (sp33, sp33), 5, 5, 12, 4), first=True)[0]
    m = w.descriptor
    assert m.has(C.NEGATIVE_LAMBDA_BAR) and m.has(C.NO_QUASI_NONSINGULAR_RICCI)
    assert m.has(C.BF_NONVANISHING)
    assert w.property_verdict.is_holds
    assert property_check(m, "R").is_holds
    assert w.general_ricci is not None
    N = tail_summand(w.l1, w.l2)
    assert m.euler == 2 * sp33.euler + make_block(SurfaceProduct(w.g, w.h)).euler + N.euler - 6


def test_general_ricci_on_worked_example(sp33):
    ws = find_witnesses(WitnessQuery("R", (sp33, sp33), 5, 5, 12, 4))
    w = {x.params: x for x in ws}[(5, 5, 9, 1)]
    assert w.general_ricci.is_fails
    assert w.general_ricci.margin == PiQuantity(-19)


def test_reverify_from_descriptor(sp33):
    ws = find_witnesses(WitnessQuery("R", (sp33, sp33), 7, 7, 14, 6))
    assert ws
    for w in ws:
        m = w.descriptor
        prod = make_block(SurfaceProduct(w.g, w.h))
        N = tail_summand(w.l1, w.l2)
        # summands are recovered from the assembled totals
        sm = (2 * m.euler - 3 * m.signature) - (2 * prod.euler - 3 * prod.signature) - (2 * N.euler - 3 * N.signature) + 4 * 3
        sp = m.c1sq - prod.c1sq - N.c1sq + 4 * 3
        vol = m.simplicial_volume.value - prod.simplicial_volume.value
        margins, *_ = re_margins(sm, sp, vol, 2, 1295, w.g, w.h, w.l1, w.l2)
        assert all(pq_sign(x) == 1 for _, x in margins)
        assert margins == w.margins


def test_e_kind(sp33):
    ws = find_witnesses(WitnessQuery("E", (sp33, sp33), 7, 7, 10, 10))
    assert [w.params for w in ws] == oracles.brute_force_re(64, 64, 192, 2, 81, 7, 7, 10, 10)
    assert ws and all(w.descriptor.has(C.NO_EINSTEIN_METRIC) for w in ws)
    assert all(w.property_verdict.is_holds for w in ws[:10])


def test_single_summand(k3):
    ws = find_witnesses(WitnessQuery("R", (make_block(SurfaceProduct(3, 5)),), 7, 7, 10, 10, assemble=False))
    x = make_block(SurfaceProduct(3, 5))
    sm, sp, vol = _data([x])
    assert [w.params for w in ws] == oracles.brute_force_re(sm, sp, vol, 1, 1295, 7, 7, 10, 10)


def test_mu_matches_oracle(k3):
    q = WitnessQuery("Mu", (k3,), 9, 9, 10, 10, alpha_range=(2, 5), beta_range=(0, 5), assemble=False)
    ws = find_witnesses(q)
    sm, sp = 2 * k3.euler - 3 * k3.signature, k3.c1sq
    expect = oracles.brute_force_mu(sm, sp, range(2, 6), range(0, 6), 9, 9, 10, 10)
    assert sorted(w.params for w in ws) == sorted(expect)
    assert [w.params for w in ws] == sorted(w.params for w in ws)
    for w in ws:
        assert (4 * w.alpha + 2 * w.beta - 1) % 4 == 3
    assert ws[0].note.startswith("countable family")


def test_mu_assembled(k3):
    q = WitnessQuery("Mu", (k3,), 5, 5, 4, 4, alpha_range=(2, 2), beta_range=(2, 2))
    ws = find_witnesses(q)
    assert ws
    for w in ws:
        assert w.property_verdict.is_holds
        assert w.descriptor.has(C.NEGATIVE_LAMBDA_BAR)


def test_band_consistency_grid(sp33, k3):
    for parts in ([sp33, sp33], [sp33], [k3, sp33]):
        sm, sp, vol = _data(parts)
        for g in (3, 5, 7, 9):
            for h in (3, 5, 7, 9):
                for c in (1295, 81):
                    _, a, b, _ = re_margins(sm, sp, vol, len(parts), c, g, h, 1, 1)
                    assert a - b == band_gap_stated(sp, vol, g, h, c)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20), st.integers(1, 20))
def test_band_gap_monotone(g1, h1, g2, h2):
    G1, G2 = (g1 - 1) * (h1 - 1), (g2 - 1) * (h2 - 1)
    if G1 >= G2:
        return
    lo = band_gap_stated(64, 192, g1, h1)
    hi = band_gap_stated(64, 192, g2, h2)
    assert pq_sign(hi - lo) == 1


def test_mu_band():
    margins, d, e, _ = mu_margins(0, 0, 2, 2, 2, 3, 3, 1, 1)
    assert d == PiQuantity(16 - MU_COEF * 4)
    assert e == PiQuantity(Fraction(16 + 16, 3))
    assert MU_COEF == Fraction(20, 27)


def test_witness_csv(sp33):
    ws = find_witnesses(WitnessQuery("R", (sp33, sp33), 5, 5, 6, 4))
    text = witnesses_csv(ws)
    lines = text.splitlines()
    assert lines[0].startswith("kind,g,h,l1,l2")
    assert len(lines) == len(ws) + 1
    assert witnesses_csv(ws) == text


def test_witness_json(sp33):
    w = find_witnesses(WitnessQuery("R", (sp33, sp33), 5, 5, 12, 4), first=True)[0]
    obj = w.to_json()
    assert (obj["g"], obj["h"], obj["l1"], obj["l2"]) == w.params
    assert set(obj["margins"]) == {"minus", "plus", "threshold"}


def test_witnesses_stable_under_finer_pi(sp33):
    with use_pi2_interval(certified_pi2_interval(40)):
        fine = find_witnesses(WitnessQuery("R", (sp33, sp33), 7, 7, 12, 8, assemble=False))
    coarse = find_witnesses(WitnessQuery("R", (sp33, sp33), 7, 7, 12, 8, assemble=False))
    assert [w.params for w in fine] == [w.params for w in coarse]


def test_homotopy_k3_note():
    y = make_block(HomotopyK3(1))
    ws = find_witnesses(WitnessQuery("Mu", (y,), 5, 5, 3, 3, alpha_range=(2, 2), beta_range=(2, 2), assemble=False))
    assert all(w.note for w in ws)
