"""Descriptors for closed oriented smooth 4-manifolds.

A descriptor stores only what is independent: Euler characteristic,
signature and first Betti number.  ``b2``, ``b+``, ``b-`` and ``c1^2`` are
derived on demand by :func:`derive_betti`.
"""
from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass
from typing import Any, Generic, NamedTuple, TypeVar, Union

from .arith import UNDECIDABLE, PiQuantity, pq_sign
from .errors import InconsistentDescriptor, PreconditionFailed, SchemaError
from .verdict import Verdict

T = TypeVar("T")


# -- knowledge lattice -------------------------------------------------------

@dataclass(frozen=True)
class Known(Generic[T]):
    value: T


@dataclass(frozen=True)
class Bounded(Generic[T]):
    lo: T
    hi: T

    def __post_init__(self) -> None:
        if isinstance(self.lo, PiQuantity):
            s = pq_sign(self.hi - self.lo)
            if s is not UNDECIDABLE and s < 0:
                raise ValueError(f"Bounded needs lo <= hi, got [{self.lo}, {self.hi}]")
        elif self.lo > self.hi:
            raise ValueError(f"Bounded needs lo <= hi, got [{self.lo}, {self.hi}]")


class _Unknown:
    _instance = None

    def __new__(cls) -> "_Unknown":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"

    def __reduce__(self):
        return (_Unknown, ())


Unknown = _Unknown()
Knowledge = Union[Known, Bounded, _Unknown]


def known_value(k: Knowledge):
    """The value of a ``Known``, else ``None``."""
    return k.value if isinstance(k, Known) else None


def knowledge_to_json(k: Knowledge, enc=lambda v: v) -> Any:
    if isinstance(k, Known):
        return {"known": enc(k.value)}
    if isinstance(k, Bounded):
        return {"bounded": [enc(k.lo), enc(k.hi)]}
    return "unknown"


def knowledge_from_json(obj: Any, dec=lambda v: v) -> Knowledge:
    if obj == "unknown" or obj is None:
        return Unknown
    if isinstance(obj, dict) and "known" in obj:
        return Known(dec(obj["known"]))
    if isinstance(obj, dict) and "bounded" in obj:
        lo, hi = obj["bounded"]
        return Bounded(dec(lo), dec(hi))
    raise SchemaError(f"bad knowledge value: {obj!r}")


# -- fundamental group tags --------------------------------------------------

@dataclass(frozen=True)
class Trivial:
    def b1_contribution(self) -> int:
        return 0

    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class FreeAbelianRank:
    """Abelian at the level of H1: Z^r plus optional finite cyclic torsion."""

    r: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError("rank must be >= 0")
        object.__setattr__(self, "torsion", tuple(self.torsion))

    def b1_contribution(self) -> int:
        return self.r

    def __str__(self) -> str:
        pieces = [f"Z^{self.r}" if self.r != 1 else "Z"] if self.r else []
        pieces += [f"Z/{p}" for p in self.torsion]
        return " + ".join(pieces) or "1"


@dataclass(frozen=True)
class Cyclic:
    p: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError("Cyclic(p) needs p >= 2")

    def b1_contribution(self) -> int:
        return 0

    def __str__(self) -> str:
        return f"Z/{self.p}"


@dataclass(frozen=True)
class SurfaceProduct:
    g: int
    h: int

    def b1_contribution(self) -> int:
        return 2 * (self.g + self.h)

    def __str__(self) -> str:
        return f"pi1(S_{self.g}) x pi1(S_{self.h})"


@dataclass(frozen=True)
class Other:
    label: str

    def b1_contribution(self) -> None:
        return None

    def __str__(self) -> str:
        return self.label


Pi1Tag = Union[Trivial, FreeAbelianRank, Cyclic, SurfaceProduct, Other]


def pi1_to_json(tag: Pi1Tag) -> dict:
    if isinstance(tag, Trivial):
        return {"kind": "Trivial"}
    if isinstance(tag, FreeAbelianRank):
        out: dict = {"kind": "FreeAbelianRank", "r": tag.r}
        if tag.torsion:
            out["torsion"] = list(tag.torsion)
        return out
    if isinstance(tag, Cyclic):
        return {"kind": "Cyclic", "p": tag.p}
    if isinstance(tag, SurfaceProduct):
        return {"kind": "SurfaceProduct", "g": tag.g, "h": tag.h}
    return {"kind": "Other", "label": tag.label}


def pi1_from_json(obj: Any) -> Pi1Tag:
    try:
        kind = obj["kind"]
        if kind == "Trivial":
            return Trivial()
        if kind == "FreeAbelianRank":
            return FreeAbelianRank(int(obj["r"]), tuple(obj.get("torsion", ())))
        if kind == "Cyclic":
            return Cyclic(int(obj["p"]))
        if kind == "SurfaceProduct":
            return SurfaceProduct(int(obj["g"]), int(obj["h"]))
        if kind == "Other":
            return Other(str(obj["label"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad pi1 tag {obj!r}: {exc}") from exc
    raise SchemaError(f"unknown pi1 kind {obj!r}")


class W2(enum.Enum):
    SPIN = "Spin"
    NONSPIN = "NonSpin"
    UNKNOWN = "UnknownW2"


# -- certificates ------------------------------------------------------------

class CertKind(enum.Enum):
    SW_ODD_CANONICAL = "SWOddCanonical"
    SIJ_EVEN = "SijEven"
    SYMPLECTIC = "Symplectic"
    MINIMAL = "Minimal"
    IRREDUCIBLE = "Irreducible"
    NONESSENTIAL = "Nonessential"
    BF_NONVANISHING = "BFNonvanishing"
    NO_QUASI_NONSINGULAR_RICCI = "NoQuasiNonsingularRicci"
    NEGATIVE_LAMBDA_BAR = "NegativeLambdaBar"
    SMOOTH_FAMILY_INDEX = "SmoothFamilyIndex"
    NO_EINSTEIN_METRIC = "NoEinsteinMetric"


@dataclass(frozen=True, order=True)
class Certificate:
    """A fact taken on trust from a cited argument, not computed here.

    ``m`` is only used by ``SmoothFamilyIndex``.
    """

    kind: CertKind
    provenance: str
    m: int | None = None

    def __post_init__(self) -> None:
        if not self.provenance or not self.provenance.strip():
            raise ValueError("certificate provenance must be non-empty")
        if (self.kind is CertKind.SMOOTH_FAMILY_INDEX) != (self.m is not None):
            raise ValueError("SmoothFamilyIndex certificates (and only those) carry m")
        if self.m is not None and self.m < 0:
            raise ValueError("SmoothFamilyIndex needs m >= 0")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value, "provenance": self.provenance}
        if self.m is not None:
            out["m"] = self.m
        return out

    @classmethod
    def from_json(cls, obj: Any) -> "Certificate":
        try:
            return cls(CertKind(obj["kind"]), obj["provenance"], obj.get("m"))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad certificate {obj!r}: {exc}") from exc


def _cert_key(c: Certificate):
    return (c.kind.value, -1 if c.m is None else c.m, c.provenance)


# -- descriptor --------------------------------------------------------------

class Betti(NamedTuple):
    b2: int
    b_plus: int
    b_minus: int
    c1sq: int


@dataclass(frozen=True)
class ManifoldDescriptor:
    name: str
    euler: int
    signature: int
    b1: Knowledge = Unknown
    pi1: Pi1Tag = Other("unspecified")
    w2: W2 = W2.UNKNOWN
    simplicial_volume: Knowledge = Unknown
    entropy4: Knowledge = Unknown
    certificates: frozenset = frozenset()
    trace: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "certificates", frozenset(self.certificates))
        object.__setattr__(self, "trace", tuple(self.trace))
        sv = self.simplicial_volume
        if isinstance(sv, Known) and sv.value < 0:
            raise InconsistentDescriptor("simplicial volume must be >= 0")

    # convenience -----------------------------------------------------------
    @property
    def b1_known(self) -> int | None:
        return known_value(self.b1)

    @property
    def c1sq(self) -> int:
        return 2 * self.euler + 3 * self.signature

    def betti(self) -> Betti:
        return derive_betti(self)

    def has(self, kind: CertKind) -> bool:
        return any(c.kind is kind for c in self.certificates)

    def cert(self, kind: CertKind) -> Certificate | None:
        found = sorted((c for c in self.certificates if c.kind is kind), key=_cert_key)
        return found[0] if found else None

    def family_index(self) -> int | None:
        c = self.cert(CertKind.SMOOTH_FAMILY_INDEX)
        return None if c is None else c.m

    def with_certs(self, *certs: Certificate) -> "ManifoldDescriptor":
        return dataclasses.replace(self, certificates=self.certificates | frozenset(certs))

    def without_certs(self, *kinds: CertKind) -> "ManifoldDescriptor":
        keep = frozenset(c for c in self.certificates if c.kind not in kinds)
        return dataclasses.replace(self, certificates=keep)

    def replace(self, **changes) -> "ManifoldDescriptor":
        return dataclasses.replace(self, **changes)

    def traced(self, step: str) -> "ManifoldDescriptor":
        return dataclasses.replace(self, trace=self.trace + (step,))

    def sorted_certificates(self) -> list[Certificate]:
        return sorted(self.certificates, key=_cert_key)

    # serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "euler": self.euler,
            "signature": self.signature,
            "b1": knowledge_to_json(self.b1),
            "pi1": pi1_to_json(self.pi1),
            "w2": self.w2.value,
            "simplicial_volume": knowledge_to_json(self.simplicial_volume),
            "entropy4": knowledge_to_json(self.entropy4, lambda q: q.to_json()),
            "certificates": [c.to_json() for c in self.sorted_certificates()],
            "trace": list(self.trace),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, obj: Any) -> "ManifoldDescriptor":
        if not isinstance(obj, dict):
            raise SchemaError("descriptor JSON must be an object")
        missing = {"name", "euler", "signature"} - obj.keys()
        if missing:
            raise SchemaError(f"descriptor JSON missing {sorted(missing)}")
        try:
            euler, signature = obj["euler"], obj["signature"]
            if isinstance(euler, bool) or not isinstance(euler, int):
                raise SchemaError("euler must be an integer")
            if isinstance(signature, bool) or not isinstance(signature, int):
                raise SchemaError("signature must be an integer")
            return cls(
                name=str(obj["name"]),
                euler=euler,
                signature=signature,
                b1=knowledge_from_json(obj.get("b1", "unknown"), int),
                pi1=pi1_from_json(obj.get("pi1", {"kind": "Other", "label": "unspecified"})),
                w2=W2(obj.get("w2", "UnknownW2")),
                simplicial_volume=knowledge_from_json(obj.get("simplicial_volume", "unknown"), int),
                entropy4=knowledge_from_json(obj.get("entropy4", "unknown"), PiQuantity.from_json),
                certificates=[Certificate.from_json(c) for c in obj.get("certificates", [])],
                trace=[str(t) for t in obj.get("trace", [])],
            )
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(str(exc)) from exc

    @classmethod
    def loads(cls, text: str) -> "ManifoldDescriptor":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from exc
        return cls.from_json(obj)


@dataclass(frozen=True)
class FormalClass:
    """One formal class ``sx*c1(X) + sy*c1(Y) + sum(s_i * E_i)``."""

    sign_x: int
    sign_y: int
    exceptional_signs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "exceptional_signs", tuple(self.exceptional_signs))
        if any(s not in (1, -1) for s in (self.sign_x, self.sign_y, *self.exceptional_signs)):
            raise ValueError("formal class signs must be +1 or -1")

    def __str__(self) -> str:
        sym = lambda s: "+" if s > 0 else "-"  # noqa: E731
        tail = "".join(f" {sym(s)} E{i + 1}" for i, s in enumerate(self.exceptional_signs))
        return f"{sym(self.sign_x)}c1(X) {sym(self.sign_y)} c1(Y){tail}"


# -- operations --------------------------------------------------------------

def _betti_or_reason(euler: int, signature: int, b1: int) -> Betti | str:
    b2 = euler - 2 + 2 * b1
    if b2 < 0:
        return f"b2 = e - 2 + 2 b1 = {b2} is negative"
    if (b2 + signature) % 2:
        return f"b2 + sigma = {b2 + signature} is odd"
    bp, bm = (b2 + signature) // 2, (b2 - signature) // 2
    if bp < 0:
        return f"b+ = {bp} is negative"
    if bm < 0:
        return f"b- = {bm} is negative"
    return Betti(b2, bp, bm, 2 * euler + 3 * signature)


def derive_betti(d: ManifoldDescriptor) -> Betti:
    b1 = d.b1_known
    if b1 is None:
        raise PreconditionFailed(f"{d.name}: b1 is not known")
    out = _betti_or_reason(d.euler, d.signature, b1)
    if isinstance(out, str):
        raise InconsistentDescriptor(f"{d.name}: {out}")
    return out


def validate_descriptor(d: ManifoldDescriptor) -> Verdict:
    """Check the structural invariants; the first violation is reported."""
    if d.w2 is W2.SPIN and isinstance(d.pi1, Trivial) and d.signature % 16:
        return Verdict.fails(f"Rokhlin: spin simply connected but sigma = {d.signature} not divisible by 16")
    sv = d.simplicial_volume
    if isinstance(sv, Known) and sv.value < 0:
        return Verdict.fails("simplicial volume is negative")
    if isinstance(sv, Bounded) and sv.lo < 0:
        return Verdict.fails("simplicial volume bound is negative")
    b1 = d.b1_known
    if isinstance(d.b1, Bounded):
        lo = d.b1.lo
        if lo < 0:
            return Verdict.fails("b1 bound is negative")
    if b1 is None:
        return Verdict.undetermined("b1 unknown; Betti checks skipped")
    if b1 < 0:
        return Verdict.fails(f"b1 = {b1} is negative")
    out = _betti_or_reason(d.euler, d.signature, b1)
    if isinstance(out, str):
        return Verdict.fails(out)
    expected = d.pi1.b1_contribution()
    if expected is not None and expected != b1:
        return Verdict.fails(f"pi1 tag {d.pi1} forces b1 = {expected}, descriptor has {b1}")
    return Verdict.holds("all invariants pass")
