"""Exact arithmetic over Q(pi^2) with certified sign decisions.

Every constant that shows up in the curvature and volume inequalities is of
the form ``r0 + r2*pi^2 + rm2/pi^2`` with rational ``r*``.  A
:class:`PiQuantity` stores exactly those three coefficients; its sign is
decided from the coefficients when they agree, otherwise by enclosing the
value with a certified rational interval around pi^2.  Floats never enter a
decision.

>>> q = PiQuantity(32, 0, Fraction(-96, 1295))
>>> pq_sign(q)
1
>>> str(pq_to_decimal(PiQuantity.pi2(1), 6))
'9.869604'
"""
from __future__ import annotations

import contextlib
import contextvars
import math
import threading
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def rational_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PiSquareInterval:
    """Open rational interval ``(lo, hi)`` that contains pi^2."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if not 0 < lo < hi:
            raise ValueError(f"need 0 < lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def inverse_bounds(self) -> tuple[Fraction, Fraction]:
        """Bounds ``(1/hi, 1/lo)`` on 1/pi^2."""
        return 1 / self.hi, 1 / self.lo

    def is_certified(self) -> bool:
        """Re-check ``lo < pi^2 < hi`` with mpmath interval arithmetic."""
        digits = max(30, 2 * len(str(self.hi.denominator)) + 10)
        ref = certified_pi2_interval(digits)
        return self.lo < ref.lo and ref.hi < self.hi


# floor(pi^2 * 10^15) = 9869604401089358 (pi^2 = 9.8696044010893586188...),
# so the neighbouring points of the 10^-15 grid bracket pi^2.  The test
# suite re-derives both endpoints with mpmath interval arithmetic.
DEFAULT_PI2 = PiSquareInterval(
    Fraction(9869604401089358, 10**15), Fraction(9869604401089359, 10**15)
)


# mpmath's interval context keeps its precision as global state.
_IV_LOCK = threading.Lock()


def _mpf_to_fraction(raw: tuple) -> Fraction:
    sign, man, exp, _bc = raw
    value = Fraction(int(man)) * (Fraction(2) ** exp)
    return -value if sign else value


def certified_pi2_interval(digits: int) -> PiSquareInterval:
    """Interval on the ``10**-digits`` grid that provably contains pi^2.

    The enclosure comes from mpmath's outward-rounded interval context and is
    then widened to the decimal grid, so the width is at most ``10**-digits``
    plus one grid step.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    from mpmath import iv

    with _IV_LOCK:
        saved = iv.dps
        iv.dps = digits + 10
        try:
            a_raw, b_raw = (iv.pi**2)._mpi_
        finally:
            iv.dps = saved
    a, b = _mpf_to_fraction(a_raw), _mpf_to_fraction(b_raw)
    scale = 10**digits
    lo = Fraction(math.floor(a * scale), scale)
    hi = Fraction(math.ceil(b * scale), scale)
    return PiSquareInterval(lo, hi)


_ACTIVE_PI2: contextvars.ContextVar[PiSquareInterval] = contextvars.ContextVar(
    "fourfold_pi2_interval", default=DEFAULT_PI2
)


def active_pi2_interval() -> PiSquareInterval:
    return _ACTIVE_PI2.get()


@contextlib.contextmanager
def use_pi2_interval(interval: PiSquareInterval) -> Iterator[PiSquareInterval]:
    """Temporarily replace the interval used by sign decisions."""
    token = _ACTIVE_PI2.set(interval)
    try:
        yield interval
    finally:
        _ACTIVE_PI2.reset(token)


class _Undecidable:
    _instance = None

    def __new__(cls) -> "_Undecidable":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDECIDABLE"

    def __reduce__(self):
        return (_Undecidable, ())


UNDECIDABLE = _Undecidable()

# Undecidable outcomes observed while the default interval was in force.
_undecidable_at_default = 0


def undecidable_count() -> int:
    return _undecidable_at_default


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class PiQuantity:
    """``c0 + c2*pi^2 + cm2*pi^-2`` with rational coefficients.

    Since pi is transcendental the representation is canonical, so equality
    is coefficient-wise.
    """

    c0: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    cm2: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c0", as_rational(self.c0))
        object.__setattr__(self, "c2", as_rational(self.c2))
        object.__setattr__(self, "cm2", as_rational(self.cm2))

    @classmethod
    def rational(cls, x: RationalLike) -> "PiQuantity":
        return cls(as_rational(x))

    @classmethod
    def pi2(cls, coefficient: RationalLike = 1) -> "PiQuantity":
        return cls(0, as_rational(coefficient), 0)

    @classmethod
    def inv_pi2(cls, coefficient: RationalLike = 1) -> "PiQuantity":
        return cls(0, 0, as_rational(coefficient))

    @staticmethod
    def lift(x: "PiQuantity | RationalLike") -> "PiQuantity":
        return x if isinstance(x, PiQuantity) else PiQuantity(as_rational(x))

    def __add__(self, other):
        if isinstance(other, (PiQuantity, int, Fraction)):
            o = PiQuantity.lift(other)
            return PiQuantity(self.c0 + o.c0, self.c2 + o.c2, self.cm2 + o.cm2)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "PiQuantity":
        return PiQuantity(-self.c0, -self.c2, -self.cm2)

    def __sub__(self, other):
        if isinstance(other, (PiQuantity, int, Fraction)):
            return self + (-PiQuantity.lift(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiQuantity.lift(other) - self
        return NotImplemented

    def __mul__(self, k):
        if isinstance(k, bool) or not isinstance(k, (int, Fraction)):
            return NotImplemented
        k = Fraction(k)
        return PiQuantity(self.c0 * k, self.c2 * k, self.cm2 * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, bool) or not isinstance(k, (int, Fraction)):
            return NotImplemented
        if k == 0:
            raise ZeroDivisionError("division of PiQuantity by zero")
        return self * (1 / Fraction(k))

    def mul_pi2(self) -> "PiQuantity":
        if self.c2:
            raise ValueError("pi^4 term is outside Q(pi^2) span {1, pi^2, pi^-2}")
        return PiQuantity(self.cm2, self.c0, 0)

    def div_pi2(self) -> "PiQuantity":
        if self.cm2:
            raise ValueError("pi^-4 term is outside Q(pi^2) span {1, pi^2, pi^-2}")
        return PiQuantity(self.c2, 0, self.c0)

    @property
    def is_zero(self) -> bool:
        return not (self.c0 or self.c2 or self.cm2)

    @property
    def is_rational(self) -> bool:
        return not (self.c2 or self.cm2)

    def enclosure(self, interval: PiSquareInterval | None = None) -> tuple[Fraction, Fraction]:
        """Closed rational bounds on the value, term by term."""
        iv = interval or active_pi2_interval()
        t2 = sorted((self.c2 * iv.lo, self.c2 * iv.hi))
        tm2 = sorted((self.cm2 / iv.lo, self.cm2 / iv.hi))
        return self.c0 + t2[0] + tm2[0], self.c0 + t2[1] + tm2[1]

    def sign(self, interval: PiSquareInterval | None = None):
        return pq_sign(self, interval)

    def to_json(self) -> dict[str, str]:
        return {
            "c0": rational_to_str(self.c0),
            "c2": rational_to_str(self.c2),
            "cm2": rational_to_str(self.cm2),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PiQuantity":
        return cls(obj.get("c0", "0"), obj.get("c2", "0"), obj.get("cm2", "0"))

    def __str__(self) -> str:
        parts = []
        for coef, unit in ((self.c0, ""), (self.c2, "pi^2"), (self.cm2, "pi^-2")):
            if not coef:
                continue
            mag = _fmt_coef(abs(coef))
            term = mag if not unit else (unit if mag == "1" else f"{mag}*{unit}")
            parts.append(("-" if coef < 0 else "+", term))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for s, term in parts[1:]:
            text += f" {s} {term}"
        return text


def pq_sign(q: PiQuantity, interval: PiSquareInterval | None = None):
    """Exact sign of ``q`` as -1, 0 or +1, or :data:`UNDECIDABLE`.

    UNDECIDABLE is returned only when the enclosure over ``interval``
    straddles zero; a narrower interval may then decide it.
    """
    global _undecidable_at_default
    coefs = (q.c0, q.c2, q.cm2)
    if not any(coefs):
        return 0
    if all(c >= 0 for c in coefs):
        return 1
    if all(c <= 0 for c in coefs):
        return -1
    iv = interval or active_pi2_interval()
    lo, hi = q.enclosure(iv)
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if iv == DEFAULT_PI2:
        _undecidable_at_default += 1
    return UNDECIDABLE


class DecimalApprox(NamedTuple):
    """Decimal string truncated toward zero, and a bound on its error."""

    text: str
    error_bound: Fraction

    def __str__(self) -> str:
        return self.text


def _truncate(x: Fraction, digits: int) -> str:
    n = int(x * 10**digits)  # int() truncates toward zero
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def pq_to_decimal(q: PiQuantity, digits: int) -> DecimalApprox:
    """Decimal text of ``q`` with ``digits`` places; display only.

    The interval for pi^2 is refined until both ends of the enclosure
    truncate to the same string, so the text is correct (truncated, not
    rounded) and ``|q - text| < 10**-digits``.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    bound = Fraction(1, 10**digits)
    if q.is_rational:
        return DecimalApprox(_truncate(q.c0, digits), bound)
    precision = digits + 10
    while True:
        lo, hi = q.enclosure(certified_pi2_interval(precision))
        a, b = _truncate(lo, digits), _truncate(hi, digits)
        if a == b:
            return DecimalApprox(a, bound)
        precision += 20


@dataclass(frozen=True)
class RadicalBound:
    """``coefficient * pi**pi_power * sqrt(radicand)``."""

    coefficient: Fraction
    pi_power: int
    radicand: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", as_rational(self.coefficient))
        if self.radicand < 0:
            raise ValueError("radicand must be non-negative")

    def sign(self) -> int:
        if self.radicand == 0 or self.coefficient == 0:
            return 0
        return 1 if self.coefficient > 0 else -1

    def scaled(self, k: RationalLike) -> "RadicalBound":
        return RadicalBound(self.coefficient * as_rational(k), self.pi_power, self.radicand)

    def simplified(self) -> "RadicalBound":
        """Pull square factors out of the radicand (``sqrt(128) -> 8*sqrt(2)``)."""
        if self.radicand == 0:
            return RadicalBound(0, self.pi_power, 0)
        outside, rest, f = 1, self.radicand, 2
        while f * f <= rest:
            while rest % (f * f) == 0:
                rest //= f * f
                outside *= f
            f += 1
        return RadicalBound(self.coefficient * outside, self.pi_power, rest)

    def to_decimal(self, digits: int = 6) -> str:
        """Display only; evaluated with mpmath at ``digits + 15`` places."""
        import mpmath

        with mpmath.workdps(digits + 15):
            c = self.coefficient
            v = (mpmath.mpf(c.numerator) / c.denominator) * mpmath.pi**self.pi_power
            v *= mpmath.sqrt(self.radicand)
            n = int(v * mpmath.mpf(10) ** digits)
        sign = "-" if n < 0 else ""
        whole, frac = divmod(abs(n), 10**digits)
        return f"{sign}{whole}.{frac:0{digits}d}"

    def to_json(self) -> dict:
        return {
            "coefficient": rational_to_str(self.coefficient),
            "pi_power": self.pi_power,
            "radicand": self.radicand,
        }

    def __str__(self) -> str:
        c = _fmt_coef(self.coefficient)
        pi = "" if self.pi_power == 0 else ("*pi" if self.pi_power == 1 else f"*pi^{self.pi_power}")
        return f"{c}{pi}*sqrt({self.radicand})"
