from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourfold.arith import PiQuantity, RadicalBound
from fourfold.blocks import K3, CP2, CP2Bar, HomotopyK3, S1xS3, S4, SurfaceProduct, make_block
from fourfold.errors import InvalidParameters, NonNegativeLambda, PreconditionFailed
from fourfold.manifold import Bounded, CertKind, Known, ManifoldDescriptor, Trivial, Unknown, W2, derive_betti
from fourfold.obstructions import (
    PLUS_INFINITY,
    curvature_bounds,
    ht_report,
    lambda_k_from_yamabe,
    min_scalar_bound,
    monopole_family,
    obstructed_sum,
    property_check,
    ricci_flow_obstruction,
    ricci_margin,
)
from fourfold.surgery import connected_sum

from . import oracles

C = CertKind


def tail(l1, l2):
    parts = [make_block(S1xS3())] * l1 + [make_block(CP2Bar())] * l2
    return connected_sum(parts) if parts else make_block(S4())


def test_curvature_bounds_two_products(sp33, s4):
    cb = curvature_bounds([sp33, sp33], s4)
    assert cb.c1sq_total == 64
    assert cb.scalar_l2 == PiQuantity.pi2(2048)
    assert cb.weyl_mixed == PiQuantity.pi2(72 * 64)
    assert cb.yamabe_upper == RadicalBound(-4, 1, 128)
    assert cb.yamabe_upper.to_decimal(1) == "-142.1"
    assert cb.lambda_strictly_negative


def test_curvature_bounds_zero(k3, s4):
    cb = curvature_bounds([k3, k3], s4)
    assert cb.scalar_l2.is_zero and cb.weyl_mixed.is_zero
    assert cb.yamabe_upper.sign() == 0
    assert not cb.lambda_strictly_negative


def test_lambda_k_threshold(sp33, s4):
    cb = curvature_bounds([sp33, sp33], s4)
    assert cb.lambda_k_upper(2) == RadicalBound(-8, 1, 128)
    assert cb.lambda_k_upper(Fraction(2, 3)).sign() < 0
    with pytest.raises(PreconditionFailed):
        cb.lambda_k_upper(Fraction(1, 2))


def test_curvature_gates(sp33, k3, s4, s1s3):
    with pytest.raises(PreconditionFailed):
        curvature_bounds([sp33], s4)
    with pytest.raises(PreconditionFailed):
        curvature_bounds([sp33] * 4, s4)
    with pytest.raises(PreconditionFailed):
        curvature_bounds([sp33, make_block(SurfaceProduct(2, 2))], s4)
    with pytest.raises(PreconditionFailed):
        curvature_bounds([sp33, sp33], k3)
    curvature_bounds([sp33, sp33], s1s3)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([(3, 3), (3, 5), (5, 5), (1, 1), (1, 3)]), min_size=2, max_size=3))
def test_yamabe_sign_tracks_c1sq(gens):
    parts = [make_block(SurfaceProduct(g, h)) for g, h in gens]
    cb = curvature_bounds(parts, make_block(S4()))
    assert (cb.yamabe_upper.sign() < 0) == (sum(p.c1sq for p in parts) > 0)


@pytest.mark.parametrize("k,y,expect", [(1, -10, -10), (2, 0, 0), (Fraction(2, 3), -3, -2), (1, 5, PLUS_INFINITY)])
def test_lambda_from_yamabe(k, y, expect):
    assert lambda_k_from_yamabe(k, y) == expect


def test_lambda_from_yamabe_below_threshold():
    assert lambda_k_from_yamabe(Fraction(1, 2), -3).is_undetermined
    assert lambda_k_from_yamabe(1, RadicalBound(-4, 1, 2)) == RadicalBound(-4, 1, 2)


def test_min_scalar_bound():
    assert min_scalar_bound(-8, 1, 4) == -4
    r = min_scalar_bound(RadicalBound(-4, 1, 128), 1, 1)
    assert r == RadicalBound(-32, 1, 2)
    assert r.to_decimal(1) == "-142.1"
    assert min_scalar_bound(-8, 1, 2) == RadicalBound(-4, 0, 2)
    assert min_scalar_bound(-9, 3, Fraction(9, 4)) == -2


@pytest.mark.parametrize("lam", [1, 0, RadicalBound(4, 1, 2), RadicalBound(-4, 1, 0)])
def test_min_scalar_nonnegative(lam):
    with pytest.raises(NonNegativeLambda):
        min_scalar_bound(lam, 1, 1)


def test_min_scalar_bad_params():
    with pytest.raises(InvalidParameters):
        min_scalar_bound(-1, 0, 1)
    with pytest.raises(InvalidParameters):
        min_scalar_bound(-1, 1, -1)


def test_ricci_worked_cases(sp33):
    three = [sp33] * 3
    assert sum(x.c1sq for x in three) == 96
    v = ricci_flow_obstruction(three, tail(2, 30))
    assert tail(2, 30).c1sq == -34
    assert v.is_holds and v.margin == PiQuantity(14)
    v = ricci_flow_obstruction(three, tail(2, 3))
    assert v.is_fails and v.margin == PiQuantity(-13)


def test_ricci_zero_c1sq(k3, s4):
    with pytest.raises(PreconditionFailed):
        ricci_flow_obstruction([k3, k3], s4)


def test_obstructed_sum_certificates(sp33):
    m, v = obstructed_sum([sp33] * 3, tail(2, 30))
    assert v.is_holds
    assert m.has(C.NO_QUASI_NONSINGULAR_RICCI) and m.has(C.NEGATIVE_LAMBDA_BAR)
    m, v = obstructed_sum([sp33] * 3, tail(2, 3))
    assert not m.has(C.NO_QUASI_NONSINGULAR_RICCI) and m.has(C.NEGATIVE_LAMBDA_BAR)


_ODD = [make_block(SurfaceProduct(g, h)) for g in (1, 3, 5, 7) for h in (1, 3, 5, 7)]
_ODD += [make_block(K3()), make_block(HomotopyK3(1))]


@settings(max_examples=500, deadline=None)
@given(st.lists(st.sampled_from(_ODD), min_size=2, max_size=3), st.integers(0, 6), st.integers(0, 40))
def test_ricci_against_oracle(parts, l1, l2):
    c = [p.c1sq for p in parts]
    if sum(c) <= 0:
        return
    N = tail(l1, l2)
    v = ricci_flow_obstruction(parts, N)
    assert v.is_holds == oracles.ricci_obstructed(c, N.euler, N.signature)
    assert not v.is_undetermined
    if v.is_holds:
        assert curvature_bounds(parts, N).lambda_strictly_negative


def test_ht_product(sp33):
    r = ht_report(sp33)
    assert r.classic.is_holds
    assert r.gromov_1295.is_holds
    assert r.gromov_1295.margin == PiQuantity(32, 0, Fraction(-96, 1295))
    assert r.gromov_81.is_holds
    assert r.entropy_54.is_holds
    assert r.entropy_54.margin == PiQuantity(Fraction(352, 27))
    assert 32 - Fraction(512, 27) == Fraction(352, 27)


def _synthetic(lhs_euler, mu):
    return ManifoldDescriptor(name="syn", euler=lhs_euler, signature=0, b1=Known(0), pi1=Trivial(),
                              w2=W2.UNKNOWN, simplicial_volume=Known(0), entropy4=mu)


def test_ht_entropy_straddle(sp33):
    r = ht_report(_synthetic(5, sp33.entropy4))
    assert r.classic.is_holds
    assert r.entropy_54.is_undetermined


def test_ht_entropy_fails_below():
    mu = Bounded(PiQuantity.pi2(54 * 20), PiQuantity.pi2(54 * 30))
    assert ht_report(_synthetic(5, mu)).entropy_54.is_fails


def test_ht_unknown_invariants():
    r = ht_report(_synthetic(5, Unknown).replace(simplicial_volume=Unknown))
    assert r.gromov_1295.is_undetermined and r.entropy_54.is_undetermined


def test_ht_weak_vs_strict():
    d = _synthetic(0, Known(PiQuantity()))
    assert ht_report(d, strict=True).classic.is_fails
    assert ht_report(d, strict=False).classic.is_holds


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(1, 6))
def test_ht_monotone_in_euler(g, h, n):
    d = make_block(SurfaceProduct(g, h))
    bigger = d.replace(euler=d.euler + 2 * n)
    before, after = ht_report(d), ht_report(bigger)
    for f in ("classic", "gromov_1295", "gromov_81", "entropy_54"):
        if getattr(before, f).is_holds:
            assert not getattr(after, f).is_fails


def test_property_simply_connected_fails():
    v = property_check(make_block(CP2()), "R")
    assert v.is_fails
    assert "||X|| = 0" in v.reasons


def test_property_missing_certificates(sp33):
    v = property_check(sp33, "R")
    assert v.is_undetermined
    assert "missing certificate" in v.reasons[0]


def test_property_r_on_obstructed_sum(sp33):
    m, _ = obstructed_sum([sp33] * 3, tail(2, 30))
    assert property_check(m, "R").is_holds


def test_property_unknown_kind(sp33):
    with pytest.raises(InvalidParameters):
        property_check(sp33, "Q")


@pytest.mark.parametrize("b2", range(0, 9))
def test_monopole_counts(k3, b2):
    N = tail(0, b2)
    assert derive_betti(N).b2 == b2
    fam = monopole_family(make_block(SurfaceProduct(3, 3)), make_block(HomotopyK3(2)), N)
    assert fam.formal_count == 2 ** (2 + b2)
    assert fam.distinct_count == fam.formal_count
    assert len(fam.classes) == fam.formal_count
    assert len(set(fam.classes)) == fam.formal_count


def test_monopole_k3_halves(k3):
    N = tail(0, 2)
    fam = monopole_family(k3, make_block(HomotopyK3(3)), N)
    assert fam.formal_count == 16
    assert fam.distinct_count == 8


def test_monopole_gates(k3, sp33):
    with pytest.raises(PreconditionFailed):
        monopole_family(k3, sp33, make_block(S4()))
    with pytest.raises(PreconditionFailed):
        monopole_family(k3, make_block(HomotopyK3(1)), make_block(CP2()))


def test_ricci_margin_formula(sp33):
    N = tail(1, 4)
    assert ricci_margin([sp33, sp33], N) == PiQuantity(8 - N.c1sq - Fraction(64, 3))
