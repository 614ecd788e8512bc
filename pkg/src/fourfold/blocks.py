"""Catalog of building blocks.

Each block kind is a small frozen dataclass; :func:`make_block` turns it into
a :class:`~fourfold.manifold.ManifoldDescriptor` with its certificates.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import ClassVar

from .arith import PiQuantity
from .errors import InvalidParameters
from .manifold import (
    Bounded,
    CertKind,
    Certificate,
    Cyclic,
    FreeAbelianRank,
    Known,
    ManifoldDescriptor,
    Other,
    SurfaceProduct as SurfacePi1,
    Trivial,
    Unknown,
    W2,
)

C = CertKind

# Provenance strings for catalog certificates.
PROV_TAUBES = "Taubes: a symplectic 4-manifold with b+ > 1 has SW(K) = +-1 on its canonical class"
PROV_PRODUCT_FORM = "product of area forms on two closed surfaces is symplectic"
PROV_ODD_PRODUCT = "surgered products of odd-genus surfaces are BF-admissible (mod 2 SW and cup-product parity)"
PROV_SIMPLY_CONNECTED = "simply connected manifolds are nonessential"
PROV_KAHLER = "Kahler surface"
PROV_MINIMAL_K3 = "K3 contains no sphere of square -1 (even intersection form)"
PROV_FAMILY = "homotopy K3 from a logarithmic transform of order 2m+1 on an elliptic fibre; smooth type indexed by m"
PROV_KODAIRA = "primary Kodaira surface is a surgered product of T^2 x T^2 (one torus surgery on T^4)"
PROV_KODAIRA_SYMPLECTIC = "primary Kodaira surface carries a symplectic structure (Thurston)"
PROV_GOMPF = "Gompf's symplectic spin manifolds with (e, sigma) = (24a + 4b, -16a)"
PROV_ABBKP = "symplectic realisation of the simply connected geography region 2a + 3b >= 0, a + b = 0 mod 4, b <= -2"
PROV_THEOREM_B = "minimal irreducible BF-admissible symplectic manifolds with prescribed (e, sigma) and pi1 in {Z, Z/p}"


def _cert(kind: CertKind, provenance: str, m: int | None = None) -> Certificate:
    return Certificate(kind, provenance, m)


ZERO = Known(PiQuantity())


def abbkp_failure(a: int, b: int) -> str | None:
    """First failing region condition for (e, sigma) = (a, b), or None."""
    if 2 * a + 3 * b < 0:
        return f"2a+3b = {2 * a + 3 * b} < 0"
    if (a + b) % 4:
        return f"a+b = {a + b} not 0 mod 4"
    if b > -2:
        return f"b = {b} > -2"
    return None


def theorem_b_failure(a: int, b: int) -> str | None:
    if 2 * a + 3 * b < 0:
        return f"2a+3b = {2 * a + 3 * b} < 0"
    if (a + b) % 8:
        return f"a+b = {a + b} not 0 mod 8"
    if b >= -1:
        return f"b = {b} not < -1"
    return None


@dataclass(frozen=True)
class BlockKind:
    cli_name: ClassVar[str] = ""

    def params(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def label(self) -> str:
        ps = self.params()
        return type(self).__name__ + (f"({','.join(map(str, ps))})" if ps else "")

    def check(self) -> None:
        pass

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        raise NotImplementedError


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameters(msg)


@dataclass(frozen=True)
class SurfaceProduct(BlockKind):
    g: int
    h: int
    cli_name: ClassVar[str] = "surface-product"

    def check(self) -> None:
        _require(self.g >= 1 and self.h >= 1, "SurfaceProduct needs g, h >= 1")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        g, h = self.g, self.h
        G = (g - 1) * (h - 1)
        certs = [_cert(C.SYMPLECTIC, PROV_PRODUCT_FORM), _cert(C.SW_ODD_CANONICAL, PROV_TAUBES)]
        if g % 2 and h % 2:
            certs.append(_cert(C.SIJ_EVEN, PROV_ODD_PRODUCT))
        entropy = ZERO if G == 0 else Bounded(PiQuantity(16 * G), PiQuantity.pi2(256 * G))
        return ManifoldDescriptor(
            name=f"Sigma_{g} x Sigma_{h}",
            euler=4 * G,
            signature=0,
            b1=Known(2 * (g + h)),
            pi1=SurfacePi1(g, h),
            w2=W2.SPIN,
            simplicial_volume=Known(24 * G),
            entropy4=entropy,
            certificates=certs,
        )


def _k3_like(name: str, extra: list[Certificate]) -> ManifoldDescriptor:
    certs = [
        _cert(C.SYMPLECTIC, PROV_KAHLER),
        _cert(C.MINIMAL, PROV_MINIMAL_K3),
        _cert(C.NONESSENTIAL, PROV_SIMPLY_CONNECTED),
        _cert(C.SW_ODD_CANONICAL, PROV_TAUBES),
        *extra,
    ]
    return ManifoldDescriptor(
        name=name, euler=24, signature=-16, b1=Known(0), pi1=Trivial(), w2=W2.SPIN,
        simplicial_volume=Known(0), entropy4=ZERO, certificates=certs,
    )


@dataclass(frozen=True)
class K3(BlockKind):
    cli_name: ClassVar[str] = "k3"

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return _k3_like("K3", [])


@dataclass(frozen=True)
class HomotopyK3(BlockKind):
    m: int
    cli_name: ClassVar[str] = "homotopy-k3"

    def check(self) -> None:
        _require(self.m >= 0, "HomotopyK3 needs m >= 0")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return _k3_like(f"Y_{self.m}", [_cert(C.SMOOTH_FAMILY_INDEX, PROV_FAMILY, self.m)])


def _simple(name, e, s, b1, pi1, w2, certs) -> ManifoldDescriptor:
    return ManifoldDescriptor(
        name=name, euler=e, signature=s, b1=Known(b1), pi1=pi1, w2=w2,
        simplicial_volume=Known(0), entropy4=ZERO, certificates=certs,
    )


@dataclass(frozen=True)
class CP2(BlockKind):
    cli_name: ClassVar[str] = "cp2"

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return _simple("CP2", 3, 1, 0, Trivial(), W2.NONSPIN, [
            _cert(C.SYMPLECTIC, PROV_KAHLER), _cert(C.NONESSENTIAL, PROV_SIMPLY_CONNECTED)])


@dataclass(frozen=True)
class CP2Bar(BlockKind):
    cli_name: ClassVar[str] = "cp2bar"

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return _simple("CP2bar", 3, -1, 0, Trivial(), W2.NONSPIN,
                       [_cert(C.NONESSENTIAL, PROV_SIMPLY_CONNECTED)])


@dataclass(frozen=True)
class S1xS3(BlockKind):
    cli_name: ClassVar[str] = "s1xs3"

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        prov = "S^1 x S^3 bounds the circle's classifying map in degree 4 (H_4(S^1) = 0)"
        return _simple("S1xS3", 0, 0, 1, FreeAbelianRank(1), W2.SPIN, [_cert(C.NONESSENTIAL, prov)])


@dataclass(frozen=True)
class S4(BlockKind):
    cli_name: ClassVar[str] = "s4"

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return _simple("S4", 2, 0, 0, Trivial(), W2.SPIN, [_cert(C.NONESSENTIAL, PROV_SIMPLY_CONNECTED)])


@dataclass(frozen=True)
class Yp(BlockKind):
    p: int
    cli_name: ClassVar[str] = "yp"

    def check(self) -> None:
        _require(self.p >= 2, "Yp needs p >= 2")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        # rational homology sphere; H^2(-; Z/2) = 0 for odd p, so spin
        sv = Known(0) if amenable_rule else Unknown
        return ManifoldDescriptor(
            name=f"Y_{self.p}(lens)", euler=2, signature=0, b1=Known(0), pi1=Cyclic(self.p),
            w2=W2.SPIN if self.p % 2 else W2.UNKNOWN, simplicial_volume=sv,
            entropy4=Unknown,
        )


@dataclass(frozen=True)
class PrimaryKodaira(BlockKind):
    cli_name: ClassVar[str] = "kodaira"

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return ManifoldDescriptor(
            name="primary Kodaira surface", euler=0, signature=0, b1=Known(3),
            pi1=Other("nilpotent (Kodaira)"), w2=W2.SPIN,
            simplicial_volume=Known(0) if amenable_rule else Unknown,
            entropy4=Unknown,
            certificates=[
                _cert(C.SW_ODD_CANONICAL, PROV_KODAIRA),
                _cert(C.SIJ_EVEN, PROV_KODAIRA),
                _cert(C.SYMPLECTIC, PROV_KODAIRA_SYMPLECTIC),
            ],
        )


@dataclass(frozen=True)
class Gompf(BlockKind):
    alpha: int
    beta: int
    cli_name: ClassVar[str] = "gompf"

    def check(self) -> None:
        _require(self.alpha >= 2 and self.beta >= 0, "Gompf needs alpha >= 2, beta >= 0")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        a, b = self.alpha, self.beta
        return _simple(f"Gompf({a},{b})", 24 * a + 4 * b, -16 * a, 0, Trivial(), W2.SPIN, [
            _cert(C.SYMPLECTIC, PROV_GOMPF),
            _cert(C.SW_ODD_CANONICAL, PROV_TAUBES),
            _cert(C.NONESSENTIAL, PROV_SIMPLY_CONNECTED),
        ])


@dataclass(frozen=True)
class AbbkpSimplyConnected(BlockKind):
    a: int
    b: int
    cli_name: ClassVar[str] = "abbkp"

    def check(self) -> None:
        why = abbkp_failure(self.a, self.b)
        _require(why is None, f"AbbkpSimplyConnected({self.a},{self.b}): {why}")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        certs = [
            _cert(C.SYMPLECTIC, PROV_ABBKP),
            _cert(C.MINIMAL, PROV_ABBKP),
            _cert(C.NONESSENTIAL, PROV_SIMPLY_CONNECTED),
        ]
        if (self.a - 2 + self.b) // 2 > 1:
            certs.append(_cert(C.SW_ODD_CANONICAL, PROV_TAUBES))
        return _simple(f"ABBKP({self.a},{self.b})", self.a, self.b, 0, Trivial(), W2.NONSPIN, certs)


def _theorem_b_certs() -> list[Certificate]:
    return [_cert(k, PROV_THEOREM_B) for k in
            (C.SYMPLECTIC, C.MINIMAL, C.IRREDUCIBLE, C.SW_ODD_CANONICAL, C.SIJ_EVEN)]


@dataclass(frozen=True)
class TheoremB_Z(BlockKind):
    a: int
    b: int
    cli_name: ClassVar[str] = "theoremb-z"

    def check(self) -> None:
        why = theorem_b_failure(self.a, self.b)
        _require(why is None, f"TheoremB_Z({self.a},{self.b}): {why}")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return ManifoldDescriptor(
            name=f"X_Z({self.a},{self.b})", euler=self.a, signature=self.b, b1=Known(1),
            pi1=FreeAbelianRank(1), w2=W2.NONSPIN, certificates=_theorem_b_certs(),
        )


@dataclass(frozen=True)
class TheoremB_Zp(BlockKind):
    a: int
    b: int
    p: int
    cli_name: ClassVar[str] = "theoremb-zp"

    def check(self) -> None:
        why = theorem_b_failure(self.a, self.b)
        _require(why is None, f"TheoremB_Zp({self.a},{self.b},{self.p}): {why}")
        _require(self.p >= 3 and self.p % 2 == 1, "TheoremB_Zp needs an odd p >= 3")

    def build(self, amenable_rule: bool = False) -> ManifoldDescriptor:
        return ManifoldDescriptor(
            name=f"X_Z/{self.p}({self.a},{self.b})", euler=self.a, signature=self.b, b1=Known(0),
            pi1=Cyclic(self.p), w2=W2.NONSPIN, certificates=_theorem_b_certs(),
        )


KINDS: dict[str, type[BlockKind]] = {
    cls.cli_name: cls
    for cls in (SurfaceProduct, K3, HomotopyK3, CP2, CP2Bar, S1xS3, S4, Yp,
                PrimaryKodaira, Gompf, AbbkpSimplyConnected, TheoremB_Z, TheoremB_Zp)
}


def make_block(kind: BlockKind, *, amenable_rule: bool = False) -> ManifoldDescriptor:
    """Descriptor for a catalog block.

    ``amenable_rule`` turns on the optional "amenable pi1 => ||X|| = 0"
    upgrade for blocks whose simplicial volume is otherwise left unknown.
    """
    if not isinstance(kind, BlockKind):
        raise InvalidParameters(f"not a block kind: {kind!r}")
    for f in fields(kind):
        v = getattr(kind, f.name)
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidParameters(f"{type(kind).__name__}.{f.name} must be an integer")
    kind.check()
    return kind.build(amenable_rule).traced(f"block:{kind.label()}")


def parse_block(name: str, params: list[str] | tuple = ()) -> BlockKind:
    """Block kind from its CLI name and integer parameters."""
    cls = KINDS.get(name.lower())
    if cls is None:
        raise InvalidParameters(f"unknown block kind {name!r}; choose from {', '.join(KINDS)}")
    want = [f.name for f in fields(cls)]
    if len(params) != len(want):
        raise InvalidParameters(f"{name} takes {len(want)} parameter(s) ({', '.join(want) or 'none'})")
    try:
        values = [int(p) for p in params]
    except ValueError as exc:
        raise InvalidParameters(f"{name}: parameters must be integers") from exc
    return cls(*values)
