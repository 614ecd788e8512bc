"""Residual checks of closed-form bookkeeping against primitive additivity.

Each formula id pairs a *stated* closed form with a *derived* value computed
from catalog blocks and :func:`~fourfold.surgery.connected_sum`.  The report
lists ``stated - derived`` per grid point.  A nonzero residual is reported,
never judged.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from .arith import PiQuantity
from .blocks import CP2Bar, Gompf, S1xS3, S4, SurfaceProduct, make_block, parse_block
from .errors import InvalidParameters, UnknownFormulaId
from .families import band_gap_stated, mu_margins, re_margins
from .manifold import Bounded, Known, ManifoldDescriptor, derive_betti
from .surgery import connected_sum


def summand_from_spec(spec: str) -> ManifoldDescriptor:
    """``"k3"``, ``"gompf:2:2"``, ``"surface-product:3:3"`` -> descriptor."""
    name, *params = str(spec).split(":")
    return make_block(parse_block(name, params))


def _tail(l1: int, l2: int) -> list[ManifoldDescriptor]:
    return [make_block(S1xS3())] * l1 + [make_block(CP2Bar())] * l2


def _lemma_sum(p) -> ManifoldDescriptor:
    xs = [summand_from_spec(p["x"])] * p["j"]
    prods = [make_block(SurfaceProduct(p["g"], p["h"]))] * p["k"]
    return connected_sum(xs + prods + _tail(p["l1"], p["l2"]))


def _known(k) -> Fraction:
    if not isinstance(k, Known):
        raise InvalidParameters(f"value is not known exactly: {k!r}")
    return k.value


def _G(p) -> int:
    return (p["g"] - 1) * (p["h"] - 1)


# -- formulas ----------------------------------------------------------------

def _simplicial_volume(p):
    x = summand_from_spec(p["x"])
    stated = 24 * p["k"] * _G(p) + p["j"] * _known(x.simplicial_volume)
    return stated, _known(_lemma_sum(p).simplicial_volume)


def _sum_char(sign: int):
    def f(p):
        x = summand_from_spec(p["x"])
        per_x = 2 * x.euler + sign * 3 * x.signature
        tail = 5 * p["l2"] if sign < 0 else -p["l2"]
        stated = p["j"] * per_x + 4 * p["k"] * _G(p) - 4 * (p["j"] + p["k"] - 1 + p["l1"]) + tail
        m = _lemma_sum(p)
        return stated, 2 * m.euler + sign * 3 * m.signature
    return f


def _gompf(which: str):
    def f(p):
        a, b = p["alpha"], p["beta"]
        d = make_block(Gompf(a, b))
        if which == "bplus":
            return 4 * a + 2 * b - 1, derive_betti(d).b_plus
        if which == "plus":
            return 8 * b, 2 * d.euler + 3 * d.signature
        return 8 * (12 * a + b), 2 * d.euler - 3 * d.signature
    return f


def _mu_sum(p) -> ManifoldDescriptor:
    parts = [summand_from_spec(p["x"]), make_block(Gompf(p["alpha"], p["beta"])),
             make_block(SurfaceProduct(p["g"], p["h"]))]
    return connected_sum(parts + _tail(p["l1"], p["l2"]))


def _entropy_bound(side: str):
    def f(p):
        mu4 = _mu_sum(p).entropy4
        if not isinstance(mu4, Bounded):
            raise InvalidParameters(f"entropy of the sum is not bounded: {mu4!r}")
        G = _G(p)
        if side == "upper":
            return PiQuantity(Fraction(127, 27) * G), mu4.hi.div_pi2() / 54
        return PiQuantity.inv_pi2(Fraction(16, 54) * G), mu4.lo.div_pi2() / 54
    return f


def _corollary_n(p):
    l1, l2 = p["l1"], p["l2"]
    parts = _tail(l1, l2)
    n = connected_sum(parts) if parts else make_block(S4())
    return 4 - 4 * l1 - l1, n.c1sq


def _corollary_threshold(p):
    xs = [summand_from_spec(p["x"])] * p["j"]
    prod = make_block(SurfaceProduct(p["g"], p["h"]))
    stated = Fraction(sum(x.c1sq for x in xs) + 4 * _G(p), 3)
    return stated, Fraction(sum(x.c1sq for x in xs + [prod]), 3)


def _band_gap(p):
    xs = [summand_from_spec(p["x"])] * p["j"]
    sp = sum(x.c1sq for x in xs)
    sm = sum(2 * x.euler - 3 * x.signature for x in xs)
    v = sum(_known(x.simplicial_volume) for x in xs)
    _, upper, lower, _ = re_margins(sm, sp, v, p["j"], p["variant"], p["g"], p["h"], 1, 1)
    return band_gap_stated(sp, v, p["g"], p["h"], p["variant"]), upper - lower


def _band_gap_mu(p):
    x = summand_from_spec(p["x"])
    c, beta, G = x.c1sq, p["beta"], _G(p)
    stated = Fraction(2 * c, 3) + Fraction(16 * beta, 3) - (Fraction(128, 27) + Fraction(4, 3) - 4) * G
    _, upper, lower, _ = mu_margins(2 * x.euler - 3 * x.signature, c, 2, p["alpha"], beta, p["g"], p["h"], 1, 1)
    return PiQuantity(stated), upper - lower


@dataclass(frozen=True)
class Formula:
    description: str
    defaults: Mapping[str, object]
    compute: Callable


_SUM_DEFAULTS = {"j": 1, "k": 1, "g": 3, "h": 3, "l1": 1, "l2": 1, "x": "k3"}
_MU_DEFAULTS = {"x": "k3", "alpha": 2, "beta": 2, "g": 3, "h": 3, "l1": 1, "l2": 1}

FORMULAS: dict[str, Formula] = {
    "simplicial-volume": Formula("||M|| = 24k(g-1)(h-1) + sum ||X_m||", _SUM_DEFAULTS, _simplicial_volume),
    "sum-2e+3s": Formula("2e+3sigma of M = sum c1^2(X_m) + 4k(g-1)(h-1) - 4(j+k-1+l1) - l2",
                         _SUM_DEFAULTS, _sum_char(+1)),
    "sum-2e-3s": Formula("2e-3sigma of M = sum(2e-3sigma)(X_m) + 4k(g-1)(h-1) - 4(j+k-1+l1) + 5 l2",
                         _SUM_DEFAULTS, _sum_char(-1)),
    "gompf-bplus": Formula("b+ = 4a + 2b - 1", {"alpha": 2, "beta": 0}, _gompf("bplus")),
    "gompf-2e+3s": Formula("2e + 3sigma = 8b", {"alpha": 2, "beta": 0}, _gompf("plus")),
    "gompf-2e-3s": Formula("2e - 3sigma = 8(12a + b)", {"alpha": 2, "beta": 0}, _gompf("minus")),
    "entropy-upper": Formula("mu^4(M)/(54 pi^2) <= (127/27)(g-1)(h-1)", _MU_DEFAULTS, _entropy_bound("upper")),
    "entropy-lower": Formula("mu^4(M)/(54 pi^2) >= 16(g-1)(h-1)/(54 pi^2)", _MU_DEFAULTS, _entropy_bound("lower")),
    "corollary-n": Formula("2e+3sigma of l1(S1xS3) # l2 CP2bar = 4 - 4 l1 - l1", {"l1": 1, "l2": 1}, _corollary_n),
    "corollary-threshold": Formula("threshold (1/3)(sum c1^2(X_m) + 4(g-1)(h-1))",
                                   {"j": 1, "g": 3, "h": 3, "x": "k3"}, _corollary_threshold),
    "band-gap": Formula("A - B = (2/3)c + (8/3 - 24/(C pi^2))(g-1)(h-1) - ||X||/(C pi^2)",
                        {"j": 1, "g": 3, "h": 3, "x": "k3", "variant": 1295}, _band_gap),
    "band-gap-mu": Formula("D - E = (2/3)c + (16/3)b - (128/27 + 4/3 - 4)(g-1)(h-1)", _MU_DEFAULTS, _band_gap_mu),
}


def _as_pq(v) -> PiQuantity:
    if isinstance(v, PiQuantity):
        return v
    return PiQuantity(Fraction(v))


@dataclass(frozen=True)
class ResidualRow:
    point: tuple[tuple[str, object], ...]
    stated: object
    derived: object

    @property
    def residual(self):
        return _as_pq(self.stated) - _as_pq(self.derived)

    def to_json(self) -> dict:
        return {"point": dict(self.point), "stated": _fmt(self.stated), "derived": _fmt(self.derived),
                "residual": _fmt(self.residual)}


def _fmt(v) -> str:
    return str(_as_pq(v))


@dataclass(frozen=True)
class LemmaReport:
    formula_id: str
    description: str
    rows: tuple[ResidualRow, ...]

    @property
    def all_zero(self) -> bool:
        return all(r.residual.is_zero for r in self.rows)

    def residuals(self) -> list:
        return [r.residual for r in self.rows]

    def to_json(self) -> dict:
        return {"formula": self.formula_id, "description": self.description,
                "all_zero": self.all_zero, "rows": [r.to_json() for r in self.rows]}


def lemma_check(formula_id: str, grid: Mapping[str, object] | None = None) -> LemmaReport:
    """Evaluate ``stated - derived`` for ``formula_id`` on every grid point.

    ``grid`` maps parameter names to a value or an iterable of values;
    missing parameters take the formula's defaults.
    """
    try:
        formula = FORMULAS[formula_id]
    except KeyError:
        raise UnknownFormulaId(f"unknown formula id {formula_id!r}; known: {', '.join(FORMULAS)}") from None
    grid = dict(grid or {})
    extra = set(grid) - set(formula.defaults)
    if extra:
        raise InvalidParameters(f"{formula_id} has no parameter(s) {sorted(extra)}; takes {sorted(formula.defaults)}")
    names = sorted(formula.defaults)
    axes = []
    for n in names:
        v = grid.get(n, formula.defaults[n])
        axes.append(list(v) if isinstance(v, (list, tuple, range)) else [v])
    rows = []
    for combo in itertools.product(*axes):
        point = dict(zip(names, combo))
        stated, derived = formula.compute(point)
        rows.append(ResidualRow(tuple(point.items()), stated, derived))
    return LemmaReport(formula_id, formula.description, tuple(rows))


__all__ = ["FORMULAS", "LemmaReport", "ResidualRow", "lemma_check", "summand_from_spec"]
