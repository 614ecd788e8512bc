"""BF-admissibility as a three-condition verdict.

Condition 1 (odd SW invariant on a canonical-type class) and condition 3
(even cup-product parity) are certificates; condition 2 is arithmetic:
``b+ > 1`` and ``b+ - b1 = 3 (mod 4)``.  Condition 3 is automatic when
``b1 = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .manifold import CertKind, ManifoldDescriptor, _betti_or_reason
from .verdict import Verdict, conjoin


@dataclass(frozen=True)
class BFVerdict:
    cond1: Verdict
    cond2: Verdict
    cond3: Verdict
    overall: Verdict

    def to_json(self) -> dict:
        return {
            "cond1": self.cond1.to_json(),
            "cond2": self.cond2.to_json(),
            "cond3": self.cond3.to_json(),
            "overall": self.overall.to_json(),
        }

    def rows(self) -> list[tuple[str, str, str]]:
        return [
            ("cond1 SW(K) odd", str(self.cond1.status), "; ".join(self.cond1.reasons)),
            ("cond2 b+ - b1 = 3 mod 4", str(self.cond2.status), "; ".join(self.cond2.reasons)),
            ("cond3 Sij even", str(self.cond3.status), "; ".join(self.cond3.reasons)),
            ("overall", str(self.overall.status), "; ".join(self.overall.reasons)),
        ]


def _from_certificate(d: ManifoldDescriptor, kind: CertKind, label: str) -> Verdict:
    cert = d.cert(kind)
    if cert is None:
        return Verdict.undetermined(f"{label}: no {kind.value} certificate")
    return Verdict.holds(f"{label}: {cert.provenance}")


def cond2_verdict(d: ManifoldDescriptor) -> Verdict:
    b1 = d.b1_known
    if b1 is None:
        return Verdict.undetermined("cond2: b1 unknown")
    betti = _betti_or_reason(d.euler, d.signature, b1)
    if isinstance(betti, str):
        return Verdict.fails(f"cond2: inconsistent descriptor ({betti})")
    bp = betti.b_plus
    if bp <= 1:
        return Verdict.fails(f"cond2: b+ = {bp} is not > 1")
    r = (bp - b1) % 4
    if r != 3:
        return Verdict.fails(f"cond2: b+ - b1 = {bp - b1} = {r} mod 4")
    return Verdict.holds(f"cond2: b+ = {bp}, b+ - b1 = {bp - b1} = 3 mod 4")


def check_bf(d: ManifoldDescriptor) -> BFVerdict:
    cond1 = _from_certificate(d, CertKind.SW_ODD_CANONICAL, "cond1")
    cond2 = cond2_verdict(d)
    if d.b1_known == 0:
        cond3 = Verdict.holds("cond3: automatic since b1 = 0")
    else:
        cond3 = _from_certificate(d, CertKind.SIJ_EVEN, "cond3")
    return BFVerdict(cond1, cond2, cond3, conjoin([cond1, cond2, cond3]))
