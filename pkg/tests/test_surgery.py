import pytest
from hypothesis import given, settings, strategies as st

from fourfold.admissibility import check_bf
from fourfold.blocks import CP2, CP2Bar, SurfaceProduct, TheoremB_Z, make_block
from fourfold.errors import EmptyList, InsufficientHomology, InvalidParameters
from fourfold.manifold import CertKind, FreeAbelianRank, Known, W2, derive_betti
from fourfold.surgery import PROV_KODAIRA, add_torsion, blow_up, connected_sum, kill, torus_surgery, undo

from .strategies import blocks

C = CertKind


def test_two_cp2bar(cp2bar):
    m = connected_sum([cp2bar, cp2bar])
    assert (m.euler, m.signature) == (4, -2)
    assert m.w2 is W2.NONSPIN


def test_product_plus_s1s3(sp33, s1s3):
    m = connected_sum([sp33, s1s3])
    assert m.euler == 14
    assert m.b1 == Known(13)
    assert m.simplicial_volume == Known(96)


def test_tail_characteristic(s1s3, cp2bar):
    m = connected_sum([s1s3] * 2 + [cp2bar] * 3)
    assert 2 * m.euler + 3 * m.signature == -7


def test_empty_sum():
    with pytest.raises(EmptyList):
        connected_sum([])


def test_single_summand_is_identity(k3):
    assert connected_sum([k3]) == k3


def test_t4_kill_gives_kodaira():
    t4 = make_block(SurfaceProduct(1, 1))
    m = torus_surgery(t4, kill())
    assert (m.euler, m.signature, m.b1_known, derive_betti(m).b2) == (0, 0, 3, 4)
    assert (derive_betti(m).b_plus, derive_betti(m).b_minus) == (2, 2)
    assert m.cert(C.SW_ODD_CANONICAL).provenance == PROV_KODAIRA
    assert m.has(C.SYMPLECTIC)
    assert check_bf(m).overall.is_holds


def test_product_kill(sp33):
    m = torus_surgery(sp33, kill())
    assert m.b1_known == 11
    assert derive_betti(m).b2 == 36
    assert m.has(C.SW_ODD_CANONICAL)


def test_add_torsion_on_z():
    d = make_block(TheoremB_Z(10, -2))
    m = torus_surgery(d, add_torsion(5))
    assert m.pi1 == FreeAbelianRank(1, (5,))
    assert str(m.pi1) == "Z + Z/5"
    assert derive_betti(m) == derive_betti(d)
    assert m.b1_known == d.b1_known


def test_kill_needs_homology(k3, cp2bar):
    with pytest.raises(InsufficientHomology):
        torus_surgery(k3, kill())
    with pytest.raises(InsufficientHomology):
        torus_surgery(connected_sum([make_block(CP2()), cp2bar]), kill())


def test_add_torsion_rejects_p0():
    with pytest.raises(InvalidParameters):
        add_torsion(0)


def test_blow_up_k3(k3):
    m = blow_up(k3, 1)
    assert (m.euler, m.signature) == (25, -17)
    assert m.c1sq == -1
    assert m.w2 is W2.NONSPIN


@pytest.mark.parametrize("n", [0, -1, True, 1.0])
def test_blow_up_rejects(k3, n):
    with pytest.raises(InvalidParameters):
        blow_up(k3, n)


def test_blow_up_product(sp33):
    m = blow_up(sp33, 2)
    assert (m.euler, m.signature) == (18, -2)
    assert m.w2 is W2.NONSPIN


@settings(max_examples=60, deadline=None)
@given(blocks, st.integers(1, 5))
def test_blow_up_matches_sum(d, n):
    m = blow_up(d, n)
    s = connected_sum([d] + [make_block(CP2Bar())] * n)
    assert (m.euler, m.signature, m.b1, m.simplicial_volume) == (s.euler, s.signature, s.b1, s.simplicial_volume)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).map(lambda k: 2 * k + 1), st.integers(1, 4).map(lambda k: 2 * k + 1))
def test_kill_then_undo(g, h):
    d = make_block(SurfaceProduct(g, h))
    back = torus_surgery(torus_surgery(d, kill()), undo())
    assert (back.euler, back.signature, back.b1) == (d.euler, d.signature, d.b1)
    assert derive_betti(back) == derive_betti(d)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from(["kill", "undo", "torsion"]))
def test_bplus_minus_b1_mod4(g, h, eff):
    d = make_block(SurfaceProduct(g, h))
    spec = {"kill": kill(), "undo": undo(), "torsion": add_torsion(3)}[eff]
    m = torus_surgery(d, spec)
    before = derive_betti(d).b_plus - d.b1_known
    after = derive_betti(m).b_plus - m.b1_known
    assert (before - after) % 4 == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(blocks, min_size=3, max_size=5))
def test_sum_associative(parts):
    flat = connected_sum(parts)
    nested = connected_sum([connected_sum(parts[:2])] + parts[2:])
    for attr in ("euler", "signature", "b1", "simplicial_volume", "w2"):
        assert getattr(flat, attr) == getattr(nested, attr)


@settings(max_examples=60, deadline=None)
@given(st.lists(blocks, min_size=2, max_size=5), st.randoms(use_true_random=False))
def test_sum_order_insensitive(parts, rnd):
    shuffled = list(parts)
    rnd.shuffle(shuffled)
    a, b = connected_sum(parts), connected_sum(shuffled)
    for attr in ("euler", "signature", "b1", "simplicial_volume", "w2", "entropy4"):
        assert getattr(a, attr) == getattr(b, attr)
    assert a.has(C.BF_NONVANISHING) == b.has(C.BF_NONVANISHING)
