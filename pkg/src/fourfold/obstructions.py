"""Closed-form curvature bounds and obstruction predicates.

All comparisons go through :class:`~fourfold.arith.PiQuantity` so that
``||X|| / (1295 pi^2)`` and friends are compared exactly.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .admissibility import check_bf
from .arith import UNDECIDABLE, PiQuantity, RadicalBound, as_rational, pq_sign
from .errors import InvalidParameters, NonNegativeLambda, PreconditionFailed
from .manifold import (
    Bounded,
    CertKind,
    Certificate,
    FormalClass,
    Known,
    ManifoldDescriptor,
    Unknown,
    derive_betti,
)
from .surgery import connected_sum
from .verdict import Status, Verdict, conjoin, strict_positive

C = CertKind
K_THRESHOLD = Fraction(2, 3)  # (n - 2) / (n - 1) for n = 4

PROV_RICCI = "no quasi-non-singular normalized Ricci flow: 4n - c1^2(N) > (1/3) sum c1^2(X_m) with BF-admissible X_m, b+(N) = 0"
PROV_LAMBDA = "Perelman lambda-bar_k(M) <= -4k pi sqrt(2 sum c1^2(X_m)) < 0 for BF-admissible X_m and b+(N) = 0"


class _PlusInfinity:
    def __repr__(self) -> str:
        return "+inf"

    __str__ = __repr__


PLUS_INFINITY = _PlusInfinity()


@dataclass(frozen=True)
class CurvatureBounds:
    c1sq_total: int
    scalar_l2: PiQuantity
    weyl_mixed: PiQuantity
    yamabe_upper: RadicalBound

    @property
    def lambda_strictly_negative(self) -> bool:
        return self.yamabe_upper.sign() < 0

    def lambda_k_upper(self, k) -> RadicalBound:
        k = as_rational(k)
        if k < K_THRESHOLD:
            raise PreconditionFailed(f"lambda-bar_k bound needs k >= 2/3, got {k}")
        return RadicalBound(-4 * k, 1, 2 * self.c1sq_total)

    def to_json(self) -> dict:
        return {
            "c1sq_total": self.c1sq_total,
            "scalar_l2": self.scalar_l2.to_json(),
            "weyl_mixed": self.weyl_mixed.to_json(),
            "yamabe_upper": self.yamabe_upper.to_json(),
            "lambda_strictly_negative": self.lambda_strictly_negative,
        }


def _gate(summands: Sequence[ManifoldDescriptor], N: ManifoldDescriptor) -> int:
    if not 2 <= len(summands) <= 3:
        raise PreconditionFailed(f"need 2 or 3 BF-admissible summands, got {len(summands)}")
    for x in summands:
        v = check_bf(x).overall
        if not v.is_holds:
            raise PreconditionFailed(f"summand {x.name} is not certified BF-admissible ({v.status})")
    if N.b1_known is None:
        raise PreconditionFailed(f"{N.name}: b1 unknown, cannot certify b+ = 0")
    if derive_betti(N).b_plus != 0:
        raise PreconditionFailed(f"{N.name}: b+ = {derive_betti(N).b_plus}, need 0")
    total = sum(x.c1sq for x in summands)
    if total < 0:
        raise PreconditionFailed(f"sum of c1^2 over summands is {total} < 0")
    return total


def curvature_bounds(summands: Sequence[ManifoldDescriptor], N: ManifoldDescriptor) -> CurvatureBounds:
    """Metric-independent bounds on ``(#X_m) # N``; ``N`` does not contribute."""
    c = _gate(summands, N)
    return CurvatureBounds(
        c1sq_total=c,
        scalar_l2=PiQuantity.pi2(32 * c),
        weyl_mixed=PiQuantity.pi2(72 * c),
        yamabe_upper=RadicalBound(-4, 1, 2 * c),
    )


Yamabe = Union[int, Fraction, str, RadicalBound]


def lambda_k_from_yamabe(k, yamabe: Yamabe):
    """``k * Y`` when ``Y <= 0`` and ``k >= 2/3``; ``+inf`` when ``Y > 0``.

    Anything else gives an Undetermined verdict.
    """
    k = as_rational(k)
    if isinstance(yamabe, RadicalBound):
        sign = yamabe.sign()
        if sign <= 0 and k >= K_THRESHOLD:
            return yamabe.scaled(k)
    else:
        y = as_rational(yamabe)
        sign = (y > 0) - (y < 0)
        if sign <= 0 and k >= K_THRESHOLD:
            return k * y
    if sign > 0 and k > 0:
        return PLUS_INFINITY
    return Verdict.undetermined(f"k = {k} below 2/3 with non-positive Yamabe invariant")


def _iroot(x: int, n: int) -> int | None:
    """Exact integer n-th root of ``x >= 0``, or None."""
    lo, hi = 0, 1
    while hi**n <= x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**n == x else None


def _exact_root(x: Fraction, n: int) -> Fraction | None:
    num, den = _iroot(x.numerator, n), _iroot(x.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def min_scalar_bound(lambda_k_bar, k, vol, n: int = 4):
    """``lambda_k_bar / (k * vol^(2/n))``: lower bound on the minimum scalar curvature.

    For ``n = 4`` an irrational ``sqrt(vol)`` is returned as a
    :class:`RadicalBound`.
    """
    k, vol = as_rational(k), as_rational(vol)
    if k <= 0 or vol <= 0:
        raise InvalidParameters("need k > 0 and vol > 0")
    if isinstance(lambda_k_bar, RadicalBound):
        if lambda_k_bar.sign() >= 0:
            raise NonNegativeLambda(f"lambda-bar_k = {lambda_k_bar} is not negative")
    else:
        lambda_k_bar = as_rational(lambda_k_bar)
        if lambda_k_bar >= 0:
            raise NonNegativeLambda(f"lambda-bar_k = {lambda_k_bar} is not negative")
    if n < 1:
        raise InvalidParameters("dimension must be positive")

    # vol^(2/n) = (vol^2)^(1/n)
    root = _exact_root(vol * vol, n)
    if root is not None:
        if isinstance(lambda_k_bar, RadicalBound):
            return lambda_k_bar.scaled(1 / (k * root)).simplified()
        return lambda_k_bar / (k * root)
    if n != 4:
        raise InvalidParameters(f"vol^(2/{n}) is irrational for vol = {vol}")
    # 1/sqrt(p/q) = sqrt(p*q)/p
    p, q = vol.numerator, vol.denominator
    if isinstance(lambda_k_bar, RadicalBound):
        out = RadicalBound(lambda_k_bar.coefficient / (k * p), lambda_k_bar.pi_power, lambda_k_bar.radicand * p * q)
    else:
        out = RadicalBound(lambda_k_bar / (k * p), 0, p * q)
    return out.simplified()


def ricci_margin(summands: Sequence[ManifoldDescriptor], N: ManifoldDescriptor) -> PiQuantity:
    n = len(summands)
    c = sum(x.c1sq for x in summands)
    return PiQuantity(4 * n - N.c1sq - Fraction(c, 3))


def ricci_flow_obstruction(summands: Sequence[ManifoldDescriptor], N: ManifoldDescriptor) -> Verdict:
    """Holds when no quasi-non-singular normalized Ricci flow exists on ``(#X_m) # N``."""
    c = _gate(summands, N)
    if c <= 0:
        raise PreconditionFailed("need sum of c1^2 over summands > 0")
    margin = ricci_margin(summands, N)
    label = f"4*{len(summands)} - ({N.c1sq}) > {c}/3"
    return strict_positive(margin, label)


def obstructed_sum(summands: Sequence[ManifoldDescriptor], N: ManifoldDescriptor) -> tuple[ManifoldDescriptor, Verdict]:
    """Assemble ``(#X_m) # N`` and attach the certificates the bounds justify."""
    verdict = ricci_flow_obstruction(summands, N)
    m = connected_sum(list(summands) + [N])
    m = m.with_certs(Certificate(C.NEGATIVE_LAMBDA_BAR, PROV_LAMBDA))
    if verdict.is_holds:
        m = m.with_certs(Certificate(C.NO_QUASI_NONSINGULAR_RICCI, PROV_RICCI))
    return m, verdict


# -- Hitchin-Thorpe type inequalities ----------------------------------------

@dataclass(frozen=True)
class HTReport:
    classic: Verdict
    gromov_1295: Verdict
    gromov_81: Verdict
    entropy_54: Verdict

    def to_json(self) -> dict:
        return {
            "classic": self.classic.to_json(),
            "gromov_1295": self.gromov_1295.to_json(),
            "gromov_81": self.gromov_81.to_json(),
            "entropy_54": self.entropy_54.to_json(),
        }


def _compare(lhs: int, margin_of, bound, strict: bool, label: str) -> Verdict:
    """Compare ``lhs`` against an RHS known exactly, as an interval, or not at all.

    ``margin_of(v)`` gives ``lhs - rhs(v)``; it is decreasing in ``v``.
    """
    if bound is Unknown:
        return Verdict.undetermined(f"{label}: invariant unknown")
    lo, hi = (bound.value, bound.value) if isinstance(bound, Known) else (bound.lo, bound.hi)
    best, worst = margin_of(lo), margin_of(hi)
    s_worst = pq_sign(worst)
    if s_worst is not UNDECIDABLE and (s_worst > 0 or (not strict and s_worst == 0)):
        return Verdict.holds(label, margin=worst)
    s_best = pq_sign(best)
    if s_best is not UNDECIDABLE and (s_best < 0 or (strict and s_best == 0)):
        return Verdict.fails(f"{label}: margin {best} {'<=' if strict else '<'} 0", margin=best)
    why = "sign undecidable at current pi^2 precision" if UNDECIDABLE in (s_worst, s_best) else "bound interval straddles"
    return Verdict.undetermined(f"{label}: {why}", margin=worst)


def ht_lhs(d: ManifoldDescriptor) -> int:
    return 2 * d.euler - 3 * abs(d.signature)


def ht_report(d: ManifoldDescriptor, strict: bool = True) -> HTReport:
    lhs = ht_lhs(d)
    rel = ">" if strict else ">="
    classic = _compare(lhs, lambda v: PiQuantity(lhs), Known(0), strict, f"2e - 3|sigma| = {lhs} {rel} 0")

    def gromov(const: int):
        return lambda sv: PiQuantity(lhs, 0, Fraction(-sv, const))

    g1295 = _compare(lhs, gromov(1295), d.simplicial_volume, strict, f"2e - 3|sigma| {rel} ||X||/(1295 pi^2)")
    g81 = _compare(lhs, gromov(81), d.simplicial_volume, strict, f"2e - 3|sigma| {rel} ||X||/(81 pi^2)")
    ent = _compare(
        lhs, lambda mu4: PiQuantity(lhs) - mu4.div_pi2() / 54, d.entropy4, strict,
        f"2e - 3|sigma| {rel} mu^4/(54 pi^2)",
    )
    return HTReport(classic, g1295, g81, ent)


def _cert_gate(d: ManifoldDescriptor, kinds: Sequence[CertKind]) -> Verdict:
    missing = [k.value for k in kinds if not d.has(k)]
    if missing:
        return Verdict.undetermined(f"missing certificate(s): {', '.join(missing)}")
    return Verdict.holds(*(d.cert(k).provenance for k in kinds))


def _nonzero_volume(d: ManifoldDescriptor) -> Verdict:
    sv = d.simplicial_volume
    if isinstance(sv, Known):
        if sv.value == 0:
            return Verdict.fails("||X|| = 0")
        return Verdict.holds(f"||X|| = {sv.value} != 0")
    if isinstance(sv, Bounded):
        if sv.lo > 0:
            return Verdict.holds(f"||X|| >= {sv.lo} > 0")
        if sv.hi == 0:
            return Verdict.fails("||X|| = 0")
    return Verdict.undetermined("||X|| unknown")


def _nonzero_entropy(d: ManifoldDescriptor) -> Verdict:
    ent = d.entropy4
    if isinstance(ent, Known):
        if ent.value.is_zero:
            return Verdict.fails("mu^4 = 0")
        return Verdict.holds("mu^4 != 0")
    if isinstance(ent, Bounded):
        s = pq_sign(ent.lo)
        if s is not UNDECIDABLE and s > 0:
            return Verdict.holds(f"mu^4 >= {ent.lo} > 0")
        if ent.hi.is_zero:
            return Verdict.fails("mu^4 = 0")
    return Verdict.undetermined("mu^4 unknown or not bounded away from 0")


def property_check(d: ManifoldDescriptor, kind: str) -> Verdict:
    """Property R, E or Mu: nonvanishing invariant, strict inequality, certificates."""
    kind = kind.upper() if kind.lower() != "mu" else "Mu"
    report = ht_report(d, strict=True)
    if kind == "R":
        parts = [_nonzero_volume(d), report.gromov_1295,
                 _cert_gate(d, [C.NEGATIVE_LAMBDA_BAR, C.NO_QUASI_NONSINGULAR_RICCI])]
        margin = report.gromov_1295.margin
    elif kind == "E":
        parts = [_nonzero_volume(d), report.gromov_81, _cert_gate(d, [C.NO_EINSTEIN_METRIC])]
        margin = report.gromov_81.margin
    elif kind == "Mu":
        parts = [_nonzero_entropy(d), report.entropy_54,
                 _cert_gate(d, [C.NEGATIVE_LAMBDA_BAR, C.NO_QUASI_NONSINGULAR_RICCI])]
        margin = report.entropy_54.margin
    else:
        raise InvalidParameters(f"unknown property {kind!r}; use R, E or Mu")
    return conjoin(parts, margin=margin)


# -- monopole classes --------------------------------------------------------

@dataclass(frozen=True)
class MonopoleFamily:
    formal_count: int
    distinct_count: int
    classes: tuple[FormalClass, ...]

    def to_json(self) -> dict:
        return {
            "formal_count": self.formal_count,
            "distinct_count": self.distinct_count,
            "classes": [str(c) for c in self.classes],
        }


def _zero_canonical(d: ManifoldDescriptor) -> bool:
    """K3 and the m = 0 member of the homotopy K3 family have c1 = 0."""
    if d.c1sq != 0:
        return False
    head = d.trace[0] if d.trace else ""
    return head in ("block:K3", "block:HomotopyK3(0)")


def monopole_family(x: ManifoldDescriptor, ym: ManifoldDescriptor, N: ManifoldDescriptor,
                    *, enumerate_limit: int = 1 << 12) -> MonopoleFamily:
    """Formal classes ``+-c1(X) +- c1(Y_m) + sum(+-E_i)`` on ``X # Y_m # N``.

    ``classes`` is only listed when there are at most ``enumerate_limit``.
    """
    if ym.family_index() is None:
        raise PreconditionFailed(f"{ym.name} carries no SmoothFamilyIndex certificate")
    if N.b1_known is None:
        raise PreconditionFailed(f"{N.name}: b1 unknown")
    betti = derive_betti(N)
    if betti.b_plus != 0:
        raise PreconditionFailed(f"{N.name}: b+ = {betti.b_plus}, need 0")
    b2 = betti.b2
    formal = 2 ** (2 + b2)
    zeros = sum(1 for d in (x, ym) if _zero_canonical(d))
    distinct = formal // (2**zeros)
    classes: tuple[FormalClass, ...] = ()
    if formal <= enumerate_limit:
        from itertools import product

        classes = tuple(
            FormalClass(sx, sy, es)
            for sx, sy in product((1, -1), repeat=2)
            for es in product((1, -1), repeat=b2)
        )
    return MonopoleFamily(formal, distinct, classes)


__all__ = [
    "PLUS_INFINITY", "CurvatureBounds", "HTReport", "MonopoleFamily", "Status",
    "curvature_bounds", "lambda_k_from_yamabe", "min_scalar_bound", "ricci_flow_obstruction",
    "ricci_margin", "obstructed_sum", "ht_report", "property_check", "monopole_family",
]
