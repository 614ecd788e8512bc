"""The (e, sigma) plane: the simply connected symplectic region, the
Z and Z/p families, and homeomorphism models.

Points are written ``(a, b) = (e, sigma)``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from . import kernels
from ._pykernels import EXCEPTIONAL
from .admissibility import check_bf
from .blocks import CP2, CP2Bar, S1xS3, S4, TheoremB_Z, TheoremB_Zp, Yp, abbkp_failure, make_block, theorem_b_failure
from .errors import InvalidLatticePoint, InvalidParameters
from .manifold import Cyclic, FreeAbelianRank, ManifoldDescriptor, Trivial, W2, derive_betti
from .surgery import connected_sum
from .verdict import Verdict

REALIZED = "Realized"
EXCEPTIONAL_RESOLVED = "ExceptionalResolved"
OUTSIDE = "OutsideRegion"
EXCEPTIONAL_NOTE = "listed exception; realized by the same construction methods in later work"


@dataclass(frozen=True)
class GeographyStatus:
    kind: str
    reason: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in (REALIZED, EXCEPTIONAL_RESOLVED, OUTSIDE):
            raise InvalidParameters(f"bad geography status {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}({self.reason})" if self.kind == OUTSIDE else self.kind


def abbkp_status(a: int, b: int) -> GeographyStatus:
    why = abbkp_failure(a, b)
    if why is not None:
        return GeographyStatus(OUTSIDE, why)
    if (a, b) in EXCEPTIONAL:
        return GeographyStatus(EXCEPTIONAL_RESOLVED, EXCEPTIONAL_NOTE)
    return GeographyStatus(REALIZED)


@dataclass(frozen=True)
class HomeoModel:
    """``cp2_count CP2 # cp2bar_count CP2bar # extra`` with extra None, S1xS3 or Y_p."""

    cp2_count: int
    cp2bar_count: int
    extra: str | None = None
    p: int | None = None

    def __post_init__(self) -> None:
        if self.cp2_count < 0 or self.cp2bar_count < 0:
            raise InvalidParameters("model counts must be non-negative")
        if self.extra not in (None, "S1xS3", "Yp"):
            raise InvalidParameters(f"unknown model piece {self.extra!r}")
        if (self.extra == "Yp") != (self.p is not None):
            raise InvalidParameters("p is given exactly for the Yp piece")

    def pieces(self) -> list[ManifoldDescriptor]:
        out = [make_block(CP2())] * self.cp2_count + [make_block(CP2Bar())] * self.cp2bar_count
        if self.extra == "S1xS3":
            out.append(make_block(S1xS3()))
        elif self.extra == "Yp":
            out.append(make_block(Yp(self.p)))
        return out

    def descriptor(self) -> ManifoldDescriptor:
        parts = self.pieces()
        return connected_sum(parts) if parts else make_block(S4())

    def __str__(self) -> str:
        terms = []
        if self.cp2_count:
            terms.append(f"{self.cp2_count}CP2")
        if self.cp2bar_count:
            terms.append(f"{self.cp2bar_count}CP2bar")
        if self.extra == "S1xS3":
            terms.append("S1xS3")
        elif self.extra == "Yp":
            terms.append(f"Y{self.p}")
        return "#".join(terms) or "S4"

    def to_json(self) -> dict:
        return {"cp2": self.cp2_count, "cp2bar": self.cp2bar_count, "extra": self.extra, "p": self.p,
                "text": str(self)}


def theoremB_build(a: int, b: int, variant: str = "Z", p: int | None = None) -> tuple[ManifoldDescriptor, HomeoModel]:
    """Irreducible symplectic manifold with ``(e, sigma) = (a, b)`` and pi1 = Z or Z/p."""
    why = theorem_b_failure(a, b)
    if why is not None:
        raise InvalidLatticePoint(f"({a},{b}) is not a lattice point of the family: {why}")
    alpha, beta = (a + b) // 2, (a - b) // 2
    if variant == "Z":
        if p is not None:
            raise InvalidParameters("variant Z takes no p")
        return make_block(TheoremB_Z(a, b)), HomeoModel(alpha, beta, "S1xS3")
    if variant == "Zp":
        if p is None or p < 3 or p % 2 == 0:
            raise InvalidParameters("variant Zp needs an odd p >= 3")
        return make_block(TheoremB_Zp(a, b, p)), HomeoModel(alpha - 1, beta - 1, "Yp", p)
    raise InvalidParameters(f"variant must be 'Z' or 'Zp', got {variant!r}")


def model_consistency(d: ManifoldDescriptor, model: HomeoModel) -> Verdict:
    """Does the model's connected sum reproduce e, sigma, w2 and the pi1 tag of ``d``?"""
    m = model.descriptor()
    checks = [("e", m.euler, d.euler), ("sigma", m.signature, d.signature),
              ("w2", m.w2, d.w2), ("pi1", m.pi1, d.pi1)]
    bad = [f"{name}: model {x} vs {y}" for name, x, y in checks if x != y]
    if bad:
        return Verdict.fails(*bad)
    return Verdict.holds(f"{model} matches (e, sigma) = ({d.euler}, {d.signature})")


def classify_homeo(d: ManifoldDescriptor) -> HomeoModel | Verdict:
    """Homeomorphism model for non-spin manifolds with pi1 trivial, Z or odd cyclic.

    Everything else, including spin input, comes back ``Undetermined``.
    """
    if d.b1_known is None:
        return Verdict.undetermined("b1 unknown")
    if d.w2 is not W2.NONSPIN:
        return Verdict.undetermined(f"w2 type {d.w2.value}: only non-spin models are classified")
    bt = derive_betti(d)
    if isinstance(d.pi1, Trivial):
        return HomeoModel(bt.b_plus, bt.b_minus)
    if isinstance(d.pi1, FreeAbelianRank) and d.pi1.r == 1 and not d.pi1.torsion:
        if bt.b2 - abs(d.signature) < 6:
            return Verdict.undetermined(f"b2 - |sigma| = {bt.b2 - abs(d.signature)} < 6")
        return HomeoModel(bt.b_plus, bt.b_minus, "S1xS3")
    if isinstance(d.pi1, Cyclic) and d.pi1.p % 2 == 1:
        return HomeoModel(bt.b_plus, bt.b_minus, "Yp", d.pi1.p)
    return Verdict.undetermined(f"fundamental group {d.pi1} outside the classified cases")


@dataclass(frozen=True)
class GeographyRow:
    a: int
    b: int
    status: GeographyStatus
    mod8: bool
    alpha: int | None
    beta: int | None
    bf_verdict: str | None

    def csv_row(self) -> list:
        blank = lambda v: "" if v is None else v  # noqa: E731
        return [self.a, self.b, str(self.status), int(self.mod8), blank(self.alpha), blank(self.beta),
                blank(self.bf_verdict)]

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "status": str(self.status), "mod8": self.mod8,
                "alpha": self.alpha, "beta": self.beta, "bf_verdict": self.bf_verdict}


CSV_COLUMNS = ["a", "b", "status", "mod8", "alpha", "beta", "bf_verdict"]
_CODE_STATUS = {0: GeographyStatus(REALIZED), 1: GeographyStatus(EXCEPTIONAL_RESOLVED, EXCEPTIONAL_NOTE)}


def geography_scan(a_range: tuple[int, int], b_range: tuple[int, int], mod8: bool = False,
                   backend: str | None = None) -> list[GeographyRow]:
    """One row per lattice point, ``a`` ascending then ``b`` ascending.

    Ranges are inclusive.  With ``mod8`` only points with ``a + b = 0 mod 8``
    are kept.
    """
    (a_lo, a_hi), (b_lo, b_hi) = a_range, b_range
    codes = kernels.geography_codes((a_lo, a_hi), (b_lo, b_hi), backend=backend)
    width = max(b_hi - b_lo + 1, 0)
    rows = []
    for i, code in enumerate(codes):
        a, b = a_lo + i // width, b_lo + i % width
        on8 = (a + b) % 8 == 0
        if mod8 and not on8:
            continue
        status = _CODE_STATUS.get(code) or GeographyStatus(OUTSIDE, abbkp_failure(a, b))
        alpha = beta = verdict = None
        if on8 and theorem_b_failure(a, b) is None:
            alpha, beta = (a + b) // 2, (a - b) // 2
            verdict = check_bf(make_block(TheoremB_Z(a, b))).overall.status.value
        rows.append(GeographyRow(a, b, status, on8, alpha, beta, verdict))
    return rows


def geography_csv(rows: list[GeographyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()


__all__ = [
    "GeographyStatus", "HomeoModel", "GeographyRow", "abbkp_status", "theoremB_build", "classify_homeo",
    "model_consistency", "geography_scan", "geography_csv", "EXCEPTIONAL",
]
