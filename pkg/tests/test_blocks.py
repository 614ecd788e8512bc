import dataclasses

import pytest

from fourfold.arith import PiQuantity
from fourfold.blocks import (
    KINDS,
    K3,
    AbbkpSimplyConnected,
    Gompf,
    HomotopyK3,
    PrimaryKodaira,
    SurfaceProduct,
    TheoremB_Z,
    TheoremB_Zp,
    Yp,
    make_block,
    parse_block,
)
from fourfold.errors import InvalidParameters
from fourfold.manifold import Bounded, CertKind, Cyclic, Known, Unknown, W2, derive_betti

from . import oracles

C = CertKind


@pytest.mark.parametrize("g", range(1, 10))
@pytest.mark.parametrize("h", range(1, 10))
def test_surface_product_catalog(g, h):
    d = make_block(SurfaceProduct(g, h))
    ref = oracles.surface_product(g, h)
    bt = derive_betti(d)
    assert (d.euler, d.signature, d.b1_known) == (ref["e"], ref["sigma"], ref["b1"])
    assert bt.b_plus == 1 + 2 * g * h == ref["b_plus"]
    assert d.simplicial_volume == Known(ref["volume"])
    assert d.has(C.SYMPLECTIC) and d.has(C.SW_ODD_CANONICAL)
    assert d.has(C.SIJ_EVEN) == (g % 2 == 1 and h % 2 == 1)


def test_surface_product_entropy():
    d = make_block(SurfaceProduct(3, 3))
    assert d.entropy4 == Bounded(PiQuantity(64), PiQuantity.pi2(1024))
    assert make_block(SurfaceProduct(1, 4)).entropy4 == Known(PiQuantity())


def test_examples():
    sp = make_block(SurfaceProduct(3, 3))
    assert (sp.euler, sp.signature, sp.b1_known, sp.simplicial_volume) == (16, 0, 12, Known(96))
    g = make_block(Gompf(2, 1))
    assert (g.euler, g.signature, derive_betti(g).b_plus) == (52, -32, 9)
    y = make_block(Yp(5))
    assert (y.euler, y.signature, y.pi1) == (2, 0, Cyclic(5))


@pytest.mark.parametrize("a", range(2, 11))
@pytest.mark.parametrize("b", range(0, 11))
def test_gompf_identities(a, b):
    d = make_block(Gompf(a, b))
    assert 2 * d.euler + 3 * d.signature == 8 * b
    assert 2 * d.euler - 3 * d.signature == 8 * (12 * a + b)
    assert derive_betti(d).b_plus == 4 * a + 2 * b - 1
    assert d.w2 is W2.SPIN and d.has(C.NONESSENTIAL)


def test_homotopy_k3_matches_k3():
    k3 = make_block(K3())
    for m in range(5):
        y = make_block(HomotopyK3(m))
        assert y.family_index() == m
        strip = lambda d: dataclasses.replace(  # noqa: E731
            d.without_certs(C.SMOOTH_FAMILY_INDEX), name="", trace=())
        assert strip(y) == strip(k3)


def test_yp_volume_rule():
    assert make_block(Yp(3)).simplicial_volume is Unknown
    assert make_block(Yp(3), amenable_rule=True).simplicial_volume == Known(0)
    assert make_block(Yp(4)).w2 is W2.UNKNOWN


def test_kodaira_block():
    d = make_block(PrimaryKodaira())
    assert (d.euler, d.signature, d.b1_known, derive_betti(d).b_plus) == (0, 0, 3, 2)


@pytest.mark.parametrize("kind", [SurfaceProduct(0, 2), HomotopyK3(-1), Yp(1), Gompf(1, 0), Gompf(2, -1),
                                  AbbkpSimplyConnected(3, -2), TheoremB_Z(10, -6), TheoremB_Zp(10, -2, 4),
                                  TheoremB_Zp(10, -2, 1)])
def test_out_of_range(kind):
    with pytest.raises(InvalidParameters):
        make_block(kind)


def test_parameters_must_be_integers():
    with pytest.raises(InvalidParameters):
        make_block(SurfaceProduct(True, 3))


def test_parse_block():
    assert parse_block("surface-product", ["3", "5"]) == SurfaceProduct(3, 5)
    assert parse_block("K3", []) == K3()
    with pytest.raises(InvalidParameters):
        parse_block("torus", [])
    with pytest.raises(InvalidParameters):
        parse_block("gompf", ["2"])
    with pytest.raises(InvalidParameters):
        parse_block("gompf", ["2", "x"])


def test_every_kind_has_a_cli_name():
    assert len(KINDS) == 13
    assert all(cls.cli_name == name for name, cls in KINDS.items())


def test_trace_labels():
    assert make_block(SurfaceProduct(3, 3)).trace == ("block:SurfaceProduct(3,3)",)
    assert make_block(K3()).trace == ("block:K3",)


def test_theorem_b_blocks():
    z = make_block(TheoremB_Z(10, -2))
    zp = make_block(TheoremB_Zp(10, -2, 3))
    assert (z.euler, z.signature, z.b1_known) == (10, -2, 1)
    assert (zp.euler, zp.signature, zp.b1_known) == (10, -2, 0)
    for d in (z, zp):
        assert d.w2 is W2.NONSPIN
        assert all(d.has(k) for k in (C.SYMPLECTIC, C.MINIMAL, C.IRREDUCIBLE, C.SW_ODD_CANONICAL, C.SIJ_EVEN))
