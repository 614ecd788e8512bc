"""Connected sums, torus surgeries and blow-ups.

Certificates survive an operation only through an explicit rule below; every
other certificate is dropped, which downstream predicates see as
Undetermined rather than as a failure.
"""
from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass

from .arith import PiQuantity
from .blocks import CP2Bar, PROV_KODAIRA, PROV_KODAIRA_SYMPLECTIC, PROV_ODD_PRODUCT, PROV_TAUBES, make_block
from .errors import EmptyList, InsufficientHomology, InvalidParameters
from .manifold import (
    Bounded,
    CertKind,
    Certificate,
    Cyclic,
    FreeAbelianRank,
    Knowledge,
    Known,
    ManifoldDescriptor,
    Other,
    Pi1Tag,
    SurfaceProduct,
    Trivial,
    Unknown,
    W2,
    derive_betti,
)

C = CertKind

PROV_SUM_NONESSENTIAL = "connected sum of nonessential manifolds is nonessential (H_4 of a wedge of classifying spaces splits)"
PROV_BF_SUM = "stable cohomotopy SW invariant of a 2- or 3-fold sum of BF-admissible manifolds (plus b+ = 0 summands) is nonzero"
PROV_UNDO_ABBKP = "undoing Luttinger surgeries in an ABBKP manifold with b+ = 3 mod 4 yields a BF-admissible manifold"
PROV_LUTTINGER = "Luttinger surgery preserves the symplectic structure"
FREE_PRODUCT = "free product"


def _sum_knowledge(values: Sequence[Knowledge], zero=0) -> Knowledge:
    if any(v is Unknown for v in values):
        return Unknown
    if all(isinstance(v, Known) for v in values):
        return Known(sum((v.value for v in values), zero))
    lo = sum((v.value if isinstance(v, Known) else v.lo for v in values), zero)
    hi = sum((v.value if isinstance(v, Known) else v.hi for v in values), zero)
    return Bounded(lo, hi)


def _sum_pi1(tags: Sequence[Pi1Tag]) -> Pi1Tag:
    nontrivial = [t for t in tags if not isinstance(t, Trivial)]
    if not nontrivial:
        return Trivial()
    if len(nontrivial) == 1:
        return nontrivial[0]
    return Other(FREE_PRODUCT)


def _sum_w2(parts: Sequence[ManifoldDescriptor]) -> W2:
    if any(p.w2 is W2.NONSPIN for p in parts):
        return W2.NONSPIN
    if all(p.w2 is W2.SPIN for p in parts):
        return W2.SPIN
    return W2.UNKNOWN


def _sum_name(parts: Sequence[ManifoldDescriptor]) -> str:
    groups: list[list] = []
    for p in parts:
        if groups and groups[-1][0] == p.name:
            groups[-1][1] += 1
        else:
            groups.append([p.name, 1])
    return " # ".join(n if k == 1 else f"{k}*{n}" for n, k in groups)


def _bf_nonvanishing(parts: Sequence[ManifoldDescriptor]) -> bool:
    from .admissibility import check_bf

    admissible = 0
    for p in parts:
        if check_bf(p).overall.is_holds:
            admissible += 1
            continue
        b1 = p.b1_known
        if b1 is None or derive_betti(p).b_plus != 0:
            return False
    return admissible in (2, 3)


def connected_sum(parts: Sequence[ManifoldDescriptor]) -> ManifoldDescriptor:
    parts = list(parts)
    if not parts:
        raise EmptyList("connected_sum needs at least one summand")
    if len(parts) == 1:
        return parts[0]
    k = len(parts)
    ess = [p for p in parts if not p.has(C.NONESSENTIAL)]
    if not ess:
        entropy: Knowledge = Known(PiQuantity())
    elif len(ess) == 1:
        entropy = ess[0].entropy4
    else:
        entropy = Unknown

    certs: list[Certificate] = [c for p in parts for c in p.certificates if c.kind is C.SMOOTH_FAMILY_INDEX]
    if not ess:
        certs.append(Certificate(C.NONESSENTIAL, PROV_SUM_NONESSENTIAL))
    if _bf_nonvanishing(parts):
        certs.append(Certificate(C.BF_NONVANISHING, PROV_BF_SUM))

    trace = tuple(f"[{i}] {step}" for i, p in enumerate(parts) for step in p.trace)
    return ManifoldDescriptor(
        name=_sum_name(parts),
        euler=sum(p.euler for p in parts) - 2 * (k - 1),
        signature=sum(p.signature for p in parts),
        b1=_sum_knowledge([p.b1 for p in parts]),
        pi1=_sum_pi1([p.pi1 for p in parts]),
        w2=_sum_w2(parts),
        simplicial_volume=_sum_knowledge([p.simplicial_volume for p in parts]),
        entropy4=entropy,
        certificates=certs,
        trace=trace + (f"connected_sum({k})",),
    )


class Effect(enum.Enum):
    KILL = "kill"
    ADD_TORSION = "torsion"
    UNDO = "undo"


@dataclass(frozen=True)
class TorusSurgerySpec:
    """One torus surgery, described by its effect on homology.

    ``KILL``: the meridian becomes nullhomologous while the push-off stays
    essential, so a class and its dual die.  ``ADD_TORSION``: both are
    nullhomologous and H1 gains a ``Z/p`` summand.  ``UNDO`` reverses a
    ``KILL``.
    """

    effect: Effect
    p: int = 1
    symplectic_luttinger: bool = False
    coefficient: tuple[int, int] = (1, 1)

    def __post_init__(self) -> None:
        if self.effect is Effect.ADD_TORSION and self.p < 1:
            raise InvalidParameters("AddTorsion needs p >= 1")
        if self.symplectic_luttinger and self.coefficient[0] != 1:
            raise InvalidParameters("a Luttinger surgery is a 1/q transform; coefficient must be (1, q)")

    def label(self) -> str:
        eff = f"torsion:{self.p}" if self.effect is Effect.ADD_TORSION else self.effect.value
        kind = "luttinger" if self.symplectic_luttinger else "log"
        return f"surgery:{eff}/{kind}{self.coefficient[0]}/{self.coefficient[1]}"


def kill() -> TorusSurgerySpec:
    return TorusSurgerySpec(Effect.KILL)


def undo(luttinger: bool = False) -> TorusSurgerySpec:
    return TorusSurgerySpec(Effect.UNDO, symplectic_luttinger=luttinger)


def add_torsion(p: int, luttinger: bool = False) -> TorusSurgerySpec:
    return TorusSurgerySpec(Effect.ADD_TORSION, p=p, symplectic_luttinger=luttinger, coefficient=(1, p))


def _origin(d: ManifoldDescriptor) -> str | None:
    """The block a pure chain of torus surgeries started from, if any."""
    if not d.trace or not d.trace[0].startswith("block:"):
        return None
    if all(step.startswith("surgery:") for step in d.trace[1:]):
        return d.trace[0][len("block:"):]
    return None


def _odd_product_origin(origin: str | None) -> bool:
    if not origin or not origin.startswith("SurfaceProduct("):
        return False
    g, h = (int(x) for x in origin[len("SurfaceProduct("):-1].split(","))
    return g % 2 == 1 and h % 2 == 1


def _kill_pi1(tag: Pi1Tag) -> Pi1Tag:
    if isinstance(tag, FreeAbelianRank):
        return FreeAbelianRank(tag.r - 1, tag.torsion)
    if isinstance(tag, SurfaceProduct):
        return Other(f"surgered {tag}")
    return tag if isinstance(tag, Other) else Other(f"surgered {tag}")


def _undo_pi1(tag: Pi1Tag) -> Pi1Tag:
    if isinstance(tag, Trivial):
        return FreeAbelianRank(1)
    if isinstance(tag, FreeAbelianRank):
        return FreeAbelianRank(tag.r + 1, tag.torsion)
    if isinstance(tag, Cyclic):
        return FreeAbelianRank(1, (tag.p,))
    return Other(f"{tag} with a class restored")


def _torsion_pi1(tag: Pi1Tag, p: int) -> Pi1Tag:
    if p == 1:
        return tag
    if isinstance(tag, Trivial):
        return Cyclic(p)
    if isinstance(tag, FreeAbelianRank):
        return FreeAbelianRank(tag.r, tag.torsion + (p,))
    if isinstance(tag, Cyclic):
        return FreeAbelianRank(0, (tag.p, p))
    return Other(f"{tag} + Z/{p}")


def torus_surgery(d: ManifoldDescriptor, spec: TorusSurgerySpec) -> ManifoldDescriptor:
    b1 = d.b1_known
    if b1 is None:
        raise InsufficientHomology(f"{d.name}: torus surgery needs a known b1")
    before = derive_betti(d)
    origin = _origin(d)
    if spec.effect is Effect.KILL:
        if b1 < 1 or before.b2 < 2 or before.b_plus < 1 or before.b_minus < 1:
            raise InsufficientHomology(
                f"{d.name}: KillClass needs b1 >= 1 and b+, b- >= 1 (have b1={b1}, b+={before.b_plus}, b-={before.b_minus})"
            )
        new_b1, pi1 = b1 - 1, _kill_pi1(d.pi1)
    elif spec.effect is Effect.UNDO:
        new_b1, pi1 = b1 + 1, _undo_pi1(d.pi1)
    else:
        new_b1, pi1 = b1, _torsion_pi1(d.pi1, spec.p)

    out = ManifoldDescriptor(
        name=f"{d.name} [{spec.effect.value}]",
        euler=d.euler,
        signature=d.signature,
        b1=Known(new_b1),
        pi1=pi1,
        w2=d.w2,
        trace=d.trace + (spec.label(),),
    )
    after = derive_betti(out)
    symplectic = spec.symplectic_luttinger and d.has(C.SYMPLECTIC)

    certs: list[Certificate] = []
    if symplectic:
        certs.append(Certificate(C.SYMPLECTIC, PROV_LUTTINGER))
        if after.b_plus > 1 and d.has(C.SW_ODD_CANONICAL):
            certs.append(Certificate(C.SW_ODD_CANONICAL, PROV_TAUBES))

    if _odd_product_origin(origin):
        kodaira = origin == "SurfaceProduct(1,1)" and spec.effect is Effect.KILL and len(d.trace) == 1
        prov = PROV_KODAIRA if kodaira else PROV_ODD_PRODUCT
        for kind in (C.SW_ODD_CANONICAL, C.SIJ_EVEN):
            if d.has(kind):
                certs.append(Certificate(kind, prov))
        if kodaira:
            out = out.replace(name="primary Kodaira surface", pi1=Other("nilpotent (Kodaira)"))
            certs.append(Certificate(C.SYMPLECTIC, PROV_KODAIRA_SYMPLECTIC))
    elif (
        origin is not None
        and origin.startswith("AbbkpSimplyConnected(")
        and spec.effect is not Effect.KILL
        and spec.symplectic_luttinger
        and all("/luttinger" in s for s in d.trace[1:])
        and (after.b_plus - new_b1) % 4 == 3
    ):
        certs += [Certificate(k, PROV_UNDO_ABBKP) for k in (C.SW_ODD_CANONICAL, C.SIJ_EVEN, C.SYMPLECTIC)]

    return out.with_certs(*certs)


def blow_up(d: ManifoldDescriptor, n: int) -> ManifoldDescriptor:
    """Blow up ``n`` points: the same bookkeeping as ``d # n CP2bar``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParameters(f"blow_up needs n >= 1, got {n!r}")
    cp2bar = make_block(CP2Bar())
    summed = connected_sum([d] + [cp2bar] * n)
    keep = {C.SYMPLECTIC, C.NONESSENTIAL, C.SMOOTH_FAMILY_INDEX}
    if d.has(C.SYMPLECTIC):
        keep.add(C.SW_ODD_CANONICAL)
    certs = [c for c in d.certificates if c.kind in keep]
    if d.has(C.NONESSENTIAL):
        certs.append(Certificate(C.NONESSENTIAL, PROV_SUM_NONESSENTIAL))
    return ManifoldDescriptor(
        name=f"{d.name} # {n}*CP2bar",
        euler=summed.euler,
        signature=summed.signature,
        b1=summed.b1,
        pi1=d.pi1,
        w2=W2.NONSPIN,
        simplicial_volume=summed.simplicial_volume,
        entropy4=summed.entropy4,
        certificates=certs,
        trace=d.trace + (f"blow_up({n})",),
    )
