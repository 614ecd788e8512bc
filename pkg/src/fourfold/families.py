"""Witness search for the existence families.

For property R (and E) the manifold is

    M = (#_{m<=j} X_m) # (Sigma_h x Sigma_g) # l1 (S1xS3) # l2 CP2bar

and a witness is a tuple ``(g, h, l1, l2)`` satisfying the family's three
inequalities.  For property Mu one summand ``X`` is fixed and a Gompf
manifold ``X_{alpha,beta}`` is enumerated alongside.

The grid is screened by :mod:`fourfold.kernels`; every surviving point is
re-checked exactly with :func:`~fourfold.arith.pq_sign` before it is
returned.
"""
from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .admissibility import check_bf
from .arith import UNDECIDABLE, PiQuantity, active_pi2_interval, pq_sign, pq_to_decimal
from .blocks import CP2Bar, Gompf, S1xS3, S4, SurfaceProduct, make_block
from .errors import InvalidParameters, PreconditionFailed
from .manifold import CertKind, Certificate, Known, ManifoldDescriptor
from .obstructions import curvature_bounds, property_check, ricci_flow_obstruction
from .surgery import connected_sum
from .verdict import Verdict

C = CertKind
KAPPA_VARIANTS = (1295, 81)
MU_COEF = Fraction(128, 27) - 4  # 256 pi^2 / (54 pi^2) - 4

PROV_FAMILY_RICCI = (
    "family threshold 4(j+l1) + l2 > (1/3)(sum c1^2(X_m) + 4(g-1)(h-1)) taken as stated for the "
    "BF-admissible sum with an odd-genus product; see general_ricci for the unspecialised check"
)
PROV_FAMILY_LAMBDA = "lambda-bar_k(M) <= -4k pi sqrt(2c) < 0 with c = sum c1^2 of the BF-admissible summands > 0"
PROV_FAMILY_EINSTEIN = (
    "Einstein obstruction for the kappa' family (cited external theorem; granted by the enumerator, not re-derived)"
)
INFINITE_NOTE = "countable family: swap K3 for the homotopy K3 Y_m, m = 0, 1, 2, ... (distinct smooth structures)"


def kappa_constant(g: int, h: int, variant: int = 1295) -> PiQuantity:
    """``4(g-1)(h-1) - 24(g-1)(h-1)/(C pi^2)`` with ``C = 1295`` or ``81``."""
    if variant not in KAPPA_VARIANTS:
        raise InvalidParameters(f"kappa variant must be one of {KAPPA_VARIANTS}")
    if g < 1 or h < 1:
        raise InvalidParameters("kappa needs g, h >= 1")
    G = (g - 1) * (h - 1)
    return PiQuantity(4 * G, 0, Fraction(-24 * G, variant))


@dataclass(frozen=True)
class WitnessQuery:
    kind: str
    summands: tuple
    g_max: int
    h_max: int
    l1_max: int
    l2_max: int
    g_min: int = 3
    h_min: int = 3
    l1_min: int = 1
    l2_min: int = 1
    alpha_range: tuple[int, int] = (2, 10)
    beta_range: tuple[int, int] = (0, 10)
    assemble: bool = True

    def __post_init__(self) -> None:
        kind = {"r": "R", "e": "E", "mu": "Mu"}.get(str(self.kind).lower())
        if kind is None:
            raise InvalidParameters(f"kind must be R, E or Mu, got {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "summands", tuple(self.summands))
        if kind == "Mu" and len(self.summands) != 1:
            raise InvalidParameters("Mu queries take exactly one summand X (the Gompf summand is enumerated)")
        if kind != "Mu" and len(self.summands) not in (1, 2):
            raise InvalidParameters("R/E queries take j = 1 or 2 summands")
        if min(self.l1_min, self.l2_min) < 0:
            raise InvalidParameters("l1, l2 must be non-negative")
        if self.alpha_range[0] < 2 or self.beta_range[0] < 0:
            raise InvalidParameters("Gompf parameters need alpha >= 2, beta >= 0")

    @property
    def j(self) -> int:
        return len(self.summands) + (1 if self.kind == "Mu" else 0)

    def genera(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(max(lo, 3), hi + 1) if x % 2 == 1]


@dataclass(frozen=True)
class Witness:
    kind: str
    g: int
    h: int
    l1: int
    l2: int
    j: int
    margins: tuple[tuple[str, PiQuantity], ...]
    band_upper: PiQuantity
    band_lower: PiQuantity
    band_value: int
    alpha: int | None = None
    beta: int | None = None
    general_ricci: Verdict | None = None
    descriptor: ManifoldDescriptor | None = field(default=None, compare=False, repr=False)
    property_verdict: Verdict | None = None
    note: str = ""

    @property
    def params(self) -> tuple:
        base = (self.g, self.h, self.l1, self.l2)
        return base if self.alpha is None else base + (self.alpha, self.beta)

    def margin(self, name: str) -> PiQuantity:
        return dict(self.margins)[name]

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "g": self.g, "h": self.h, "l1": self.l1, "l2": self.l2, "j": self.j,
            "margins": {k: v.to_json() for k, v in self.margins},
            "band_upper": self.band_upper.to_json(),
            "band_lower": self.band_lower.to_json(),
            "band_value": self.band_value,
            "general_ricci": None if self.general_ricci is None else self.general_ricci.to_json(),
            "property": None if self.property_verdict is None else self.property_verdict.to_json(),
        }
        if self.alpha is not None:
            out["alpha"], out["beta"] = self.alpha, self.beta
        if self.note:
            out["note"] = self.note
        return out


class WitnessList(list):
    """Witnesses in lexicographic order, plus grid points left undecided."""

    undecided: list

    def __init__(self, items=(), undecided=()):
        super().__init__(items)
        self.undecided = list(undecided)


CSV_COLUMNS = ["kind", "g", "h", "l1", "l2", "alpha", "beta", "j", "margin_minus", "margin_plus",
               "margin_threshold", "band_upper", "band_lower", "band_value", "general_ricci", "property"]


def witnesses_csv(ws: Sequence[Witness]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for w in ws:
        m = dict(w.margins)
        writer.writerow([
            w.kind, w.g, w.h, w.l1, w.l2,
            "" if w.alpha is None else w.alpha, "" if w.beta is None else w.beta, w.j,
            m["minus"], m["plus"], m["threshold"], w.band_upper, w.band_lower, w.band_value,
            "" if w.general_ricci is None else w.general_ricci.status,
            "" if w.property_verdict is None else w.property_verdict.status,
        ])
    return buf.getvalue()


# -- exact margins -----------------------------------------------------------

def re_margins(sm: int, sp: int, v: int, j: int, const: int, g: int, h: int, l1: int, l2: int):
    """Exact margins (LHS - RHS) of the R/E system and the band ``A, B``."""
    G = (g - 1) * (h - 1)
    kappa = kappa_constant(g, h, const)
    vol = PiQuantity.inv_pi2(Fraction(v, const))
    t = 4 * (j + l1)
    upper = sp + kappa - vol
    lower = PiQuantity(Fraction(sp + 4 * G, 3))
    margins = (
        ("minus", sm + kappa - vol - t + 5 * l2),
        ("plus", upper - (t + l2)),
        ("threshold", PiQuantity(t + l2) - lower),
    )
    return margins, upper, lower, t + l2


def mu_margins(sm: int, sp: int, j: int, alpha: int, beta: int, g: int, h: int, l1: int, l2: int):
    G = (g - 1) * (h - 1)
    t = 4 * (j + l1)
    upper = PiQuantity(sp + 8 * beta - MU_COEF * G)
    lower = PiQuantity(Fraction(sp + 8 * beta + 4 * G, 3))
    margins = (
        ("minus", PiQuantity(sm + 8 * (12 * alpha + beta) - MU_COEF * G - t + 5 * l2)),
        ("plus", upper - (t + l2)),
        ("threshold", PiQuantity(t + l2) - lower),
    )
    return margins, upper, lower, t + l2


def _all_positive(margins) -> bool | None:
    """True/False when decided, None when some sign is undecidable."""
    undecided = False
    for _, m in margins:
        s = pq_sign(m)
        if s is UNDECIDABLE:
            undecided = True
        elif s <= 0:
            return False
    return None if undecided else True


def _x_bracket(den: int = 10**9) -> tuple[int, int, int]:
    iv = active_pi2_interval()
    xl = math.floor(den / iv.hi)
    xh = math.ceil(den / iv.lo)
    return xl, xh, den


# -- assembly ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _product(g: int, h: int) -> ManifoldDescriptor:
    return make_block(SurfaceProduct(g, h))


@lru_cache(maxsize=None)
def _gompf(a: int, b: int) -> ManifoldDescriptor:
    return make_block(Gompf(a, b))


@lru_cache(maxsize=None)
def tail_summand(l1: int, l2: int) -> ManifoldDescriptor:
    """``N = l1 (S1xS3) # l2 CP2bar`` (``S4`` when both are zero)."""
    parts = [make_block(S1xS3())] * l1 + [make_block(CP2Bar())] * l2
    return connected_sum(parts) if parts else make_block(S4())


def _is_k3_like(d: ManifoldDescriptor) -> bool:
    return bool(d.trace) and (d.trace[0] == "block:K3" or d.trace[0].startswith("block:HomotopyK3("))


def assemble(kind: str, summands: Sequence[ManifoldDescriptor], g: int, h: int, l1: int, l2: int,
             alpha: int | None = None, beta: int | None = None) -> tuple[ManifoldDescriptor, Verdict]:
    """Build ``M`` for a parameter tuple and attach the family certificates.

    Returns ``M`` and the unspecialised Ricci-flow verdict for it.  The
    caller is expected to have checked the family inequalities.
    """
    bf_parts = list(summands)
    if kind == "Mu":
        bf_parts.append(_gompf(alpha, beta))
    product, N = _product(g, h), tail_summand(l1, l2)
    bf_parts.append(product)
    m = connected_sum(bf_parts + [N])
    general = ricci_flow_obstruction(bf_parts, N)
    if curvature_bounds(bf_parts, N).lambda_strictly_negative:
        m = m.with_certs(Certificate(C.NEGATIVE_LAMBDA_BAR, PROV_FAMILY_LAMBDA))
    if kind == "E":
        m = m.with_certs(Certificate(C.NO_EINSTEIN_METRIC, PROV_FAMILY_EINSTEIN))
    else:
        m = m.with_certs(Certificate(C.NO_QUASI_NONSINGULAR_RICCI, PROV_FAMILY_RICCI))
    return m.traced(f"family:{kind}({g},{h},{l1},{l2}" + ("" if alpha is None else f",{alpha},{beta}") + ")"), general


def _summand_data(summands: Sequence[ManifoldDescriptor], need_volume: bool):
    for x in summands:
        v = check_bf(x).overall
        if not v.is_holds:
            raise PreconditionFailed(f"summand {x.name} is not certified BF-admissible ({v.status}: {'; '.join(v.reasons)})")
    sm = sum(2 * x.euler - 3 * x.signature for x in summands)
    sp = sum(x.c1sq for x in summands)
    vol = 0
    if need_volume:
        for x in summands:
            if not isinstance(x.simplicial_volume, Known):
                raise PreconditionFailed(f"summand {x.name}: simplicial volume not known")
            vol += x.simplicial_volume.value
    return sm, sp, vol


def find_witnesses(q: WitnessQuery, *, first: bool = False, backend: str | None = None) -> WitnessList:
    """All witnesses in the query's bounds, ordered lexicographically.

    An empty result is a normal outcome.  Grid points whose signs stay
    undecidable at the active pi^2 interval are listed in ``.undecided``
    and excluded.
    """
    gs, hs = q.genera(q.g_min, q.g_max), q.genera(q.h_min, q.h_max)
    l1r, l2r = (q.l1_min, q.l1_max), (q.l2_min, q.l2_max)
    j = q.j
    sm, sp, vol = _summand_data(q.summands, q.kind != "Mu")
    if q.kind == "Mu":
        alphas = range(q.alpha_range[0], q.alpha_range[1] + 1)
        betas = range(q.beta_range[0], q.beta_range[1] + 1)
        flat = kernels.scan_mu(alphas, betas, gs, hs, l1r, l2r, sm, sp, j, backend=backend)
        raw = [tuple(flat[i:i + 6]) for i in range(0, len(flat), 6)]
        # (a, b, g, h, l1, l2) -> ordered by (g, h, l1, l2, a, b)
        points = sorted(((g, h, l1, l2, a, b) for a, b, g, h, l1, l2 in raw))
    else:
        const = 1295 if q.kind == "R" else 81
        xl, xh, xden = _x_bracket()
        flat = kernels.scan_re(gs, hs, l1r, l2r, sm, sp, vol, j, const, xl, xh, xden, backend=backend)
        points = sorted(tuple(flat[i:i + 4]) for i in range(0, len(flat), 5))

    out: list[Witness] = []
    undecided = []
    note = INFINITE_NOTE if any(_is_k3_like(x) for x in q.summands) else ""
    for pt in points:
        g, h, l1, l2 = pt[:4]
        alpha = beta = None
        if q.kind == "Mu":
            alpha, beta = pt[4], pt[5]
            margins, upper, lower, band = mu_margins(sm, sp, j, alpha, beta, g, h, l1, l2)
        else:
            margins, upper, lower, band = re_margins(sm, sp, vol, j, const, g, h, l1, l2)
        ok = _all_positive(margins)
        if ok is None:
            undecided.append(pt)
            continue
        if not ok:
            continue
        descriptor = general = prop = None
        if q.assemble:
            descriptor, general = assemble(q.kind, q.summands, g, h, l1, l2, alpha, beta)
            prop = property_check(descriptor, q.kind)
        out.append(Witness(q.kind, g, h, l1, l2, j, margins, upper, lower, band, alpha, beta,
                           general, descriptor, prop, note))
        if first:
            break
    return WitnessList(out, undecided)


def band_gap_stated(sp: int, v: int, g: int, h: int, const: int = 1295) -> PiQuantity:
    """``A - B`` in closed form: ``2c/3 + (8/3 - 24/(C pi^2)) G - V/(C pi^2)``."""
    G = (g - 1) * (h - 1)
    return PiQuantity(Fraction(2 * sp, 3) + Fraction(8, 3) * G, 0, Fraction(-24 * G - v, const))


def decimal(q: PiQuantity, digits: int = 4) -> str:
    return pq_to_decimal(q, digits).text


__all__ = [
    "KAPPA_VARIANTS", "WitnessQuery", "Witness", "WitnessList", "kappa_constant", "find_witnesses",
    "assemble", "re_margins", "mu_margins", "witnesses_csv", "band_gap_stated", "tail_summand",
]
