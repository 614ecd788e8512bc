"""Command-line front end.

Descriptors travel between commands as JSON files (``-`` is stdin/stdout),
so a shell pipeline can mirror a connected-sum tree::

    fourfold block surface-product 3 3 -o sp33.json
    fourfold sum sp33.json sp33.json | fourfold check bf - --assert

Exit codes: 0 success, 1 a verdict other than Holds under ``--assert``,
2 usage or input errors.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .admissibility import check_bf
from .arith import certified_pi2_interval, use_pi2_interval
from .blocks import KINDS, make_block, parse_block
from .errors import FourfoldError, InvalidParameters
from .families import WitnessQuery, find_witnesses, witnesses_csv
from .geography import geography_csv, geography_scan
from .lemmas import FORMULAS, lemma_check, summand_from_spec
from .manifold import Bounded, Known, ManifoldDescriptor, derive_betti, validate_descriptor
from .obstructions import curvature_bounds, ht_report, property_check, ricci_flow_obstruction
from .surgery import Effect, TorusSurgerySpec, blow_up, connected_sum, torus_surgery
from .verdict import Verdict

EXIT_OK, EXIT_ASSERT, EXIT_ERROR = 0, 1, 2
ENV_DIGITS = "FOURFOLD_PI2_DIGITS"


class _Fail(Exception):
    """Raised by a command to request exit code 1 after its output is written."""


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def load_descriptor(ref: str) -> ManifoldDescriptor:
    """A JSON file, ``-`` for stdin, or a catalog spec such as ``k3`` or ``surface-product:3:3``."""
    if ref == "-" or Path(ref).exists():
        return ManifoldDescriptor.loads(_read_text(ref))
    if ref.split(":")[0].lower() in KINDS:
        return summand_from_spec(ref)
    raise InvalidParameters(f"{ref!r} is neither a descriptor file nor a catalog block")


def parse_range(text: str) -> tuple[int, int]:
    """``"6..40"`` or ``"5"`` -> inclusive bounds."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_grid(items: list[str]) -> dict:
    """``["g=3,5", "h=3..7", "x=k3"]`` -> parameter grid."""
    grid: dict = {}
    for item in items:
        for part in filter(None, re.split(r"[;\s]+", item)):
            name, sep, values = part.partition("=")
            if not sep:
                raise InvalidParameters(f"grid entry {part!r} is not name=values")
            out: list = []
            for v in values.split(","):
                if re.fullmatch(r"-?\d+\.\.-?\d+", v):
                    lo, hi = parse_range(v)
                    out.extend(range(lo, hi + 1))
                elif re.fullmatch(r"-?\d+", v):
                    out.append(int(v))
                else:
                    out.append(v)
            grid[name] = out
    return grid


def _verdict_exit(args, verdicts: list[Verdict]) -> None:
    if getattr(args, "assert_", False) and not all(v.is_holds for v in verdicts):
        raise _Fail()


# -- commands ----------------------------------------------------------------

def descriptor_table(d: ManifoldDescriptor) -> str:
    rows = [("name", d.name), ("e", d.euler), ("sigma", d.signature), ("b1", _knowledge_text(d.b1))]
    if d.b1_known is not None:
        bt = derive_betti(d)
        rows += [("b2", bt.b2), ("b+", bt.b_plus), ("b-", bt.b_minus)]
    rows += [("c1^2", d.c1sq), ("pi1", d.pi1), ("w2", d.w2.value),
             ("||X||", _knowledge_text(d.simplicial_volume)), ("mu^4", _knowledge_text(d.entropy4))]
    rows += [("cert", f"{c.kind.value}: {c.provenance}") for c in d.sorted_certificates()]
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)


def _knowledge_text(k) -> str:
    if isinstance(k, Known):
        return str(k.value)
    if isinstance(k, Bounded):
        return f"[{k.lo}, {k.hi}]"
    return "unknown"


def cmd_block(args) -> None:
    d = make_block(parse_block(args.kind, args.params), amenable_rule=args.amenable)
    _write(descriptor_table(d) if args.table else d.dumps() + "\n", args.output)


def cmd_sum(args) -> None:
    d = connected_sum([load_descriptor(r) for r in args.inputs])
    _write(d.dumps() + "\n", args.output)


def _parse_effect(text: str, p: int) -> tuple[Effect, int]:
    name, _, order = text.partition(":")
    try:
        effect = Effect(name)
    except ValueError:
        raise InvalidParameters(f"effect must be kill, undo or torsion:p, got {text!r}") from None
    if order:
        if effect is not Effect.ADD_TORSION or not order.isdigit():
            raise InvalidParameters(f"bad effect {text!r}")
        p = int(order)
    return effect, p


def cmd_surger(args) -> None:
    effect, args.p = _parse_effect(args.effect, args.p)
    coef = (1, args.q) if args.q is not None else ((1, args.p) if effect is Effect.ADD_TORSION else (1, 1))
    spec = TorusSurgerySpec(effect, p=args.p, symplectic_luttinger=args.luttinger, coefficient=coef)
    d = load_descriptor(args.input)
    for _ in range(args.repeat):
        d = torus_surgery(d, spec)
    _write(d.dumps() + "\n", args.output)


def cmd_blowup(args) -> None:
    _write(blow_up(load_descriptor(args.input), args.n).dumps() + "\n", args.output)


def cmd_check(args) -> None:
    what = args.what
    if what == "bf":
        v = check_bf(load_descriptor(args.inputs[0]))
        _write(_dump(v.to_json()), None)
        _verdict_exit(args, [v.overall])
    elif what == "ht":
        r = ht_report(load_descriptor(args.inputs[0]), strict=not args.weak)
        _write(_dump(r.to_json()), None)
        picked = [getattr(r, args.inequality)] if args.inequality else [r.classic, r.gromov_1295, r.gromov_81, r.entropy_54]
        _verdict_exit(args, picked)
    elif what == "ricci":
        if args.N is None:
            raise InvalidParameters("check ricci needs --N")
        v = ricci_flow_obstruction([load_descriptor(r) for r in args.inputs], load_descriptor(args.N))
        _write(_dump(v.to_json()), None)
        _verdict_exit(args, [v])
    elif what.startswith("property:"):
        v = property_check(load_descriptor(args.inputs[0]), what.split(":", 1)[1])
        _write(_dump(v.to_json()), None)
        _verdict_exit(args, [v])
    else:
        raise InvalidParameters(f"unknown check {what!r}; use bf, ht, ricci or property:R|E|Mu")


def cmd_enumerate(args) -> None:
    summands = [load_descriptor(r) for r in args.summands.split(",") if r]
    q = WitnessQuery(
        kind=args.kind, summands=summands,
        g_min=args.gmin, g_max=args.gmax, h_min=args.hmin, h_max=args.hmax,
        l1_min=args.l1min, l1_max=args.l1max, l2_min=args.l2min, l2_max=args.l2max,
        alpha_range=args.alpha, beta_range=args.beta, assemble=not args.no_assemble,
    )
    ws = find_witnesses(q, first=args.first)
    if args.csv:
        _write(witnesses_csv(ws), args.csv)
    if args.csv != "-":
        if args.first:
            payload = {"witness": ws[0].to_json() if ws else None}
        else:
            payload = {"count": len(ws), "witnesses": [w.to_json() for w in ws]}
        payload["undecided"] = [list(p) for p in ws.undecided]
        _write(_dump(payload), None)
    if args.emit_descriptor and ws:
        _write(ws[0].descriptor.dumps() + "\n", args.emit_descriptor)
    if args.assert_ and not ws:
        raise _Fail()


def cmd_verify_lemmas(args) -> None:
    ids = args.id or list(FORMULAS)
    grid = parse_grid(args.grid or [])
    reports = [lemma_check(fid, grid if args.id else {}) for fid in ids]
    _write(_dump([r.to_json() for r in reports] if len(reports) > 1 else reports[0].to_json()), None)
    if args.assert_ and not all(r.all_zero for r in reports):
        raise _Fail()


def cmd_scan(args) -> None:
    rows = geography_scan(args.a, args.b, mod8=args.mod8)
    if args.csv:
        _write(geography_csv(rows), args.csv)
    if args.csv != "-":
        _write(_dump([r.to_json() for r in rows]), None)


def cmd_eval(args) -> None:
    summands = [load_descriptor(r) for r in args.inputs]
    N = load_descriptor(args.N)
    b = curvature_bounds(summands, N)
    out = b.to_json()
    if args.k is not None:
        bound = b.lambda_k_upper(Fraction(args.k))
        out["lambda_k_upper"] = {"k": args.k, "bound": str(bound.simplified()), "decimal": bound.to_decimal()}
    _write(_dump(out), None)


def cmd_validate(args) -> None:
    d = load_descriptor(args.input)
    v = validate_descriptor(d)
    _write(_dump({"name": d.name, **v.to_json()}), None)
    if v.is_fails or (args.assert_ and not v.is_holds):
        raise _Fail()


# -- parser ------------------------------------------------------------------

def _add_assert(p: argparse.ArgumentParser) -> None:
    p.add_argument("--assert", dest="assert_", action="store_true", help="exit 1 unless the verdict is Holds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fourfold", description="Exact bookkeeping for closed 4-manifold constructions.")
    parser.add_argument("--pi2-digits", type=int, default=None, help=f"pi^2 enclosure width 10^-N (env {ENV_DIGITS})")
    parser.add_argument("--quiet", action="store_true", help="suppress the version banner on stderr")
    parser.add_argument("--version", action="version", version=f"fourfold {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("block", help="emit a catalog block descriptor")
    p.add_argument("kind", choices=sorted(KINDS))
    p.add_argument("params", nargs="*")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (the default)")
    fmt.add_argument("--table", action="store_true", help="human-readable summary")
    p.add_argument("--amenable", action="store_true", help="use the amenable-group rule for ||X||")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_block)

    p = sub.add_parser("sum", help="connected sum of descriptors")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("surger", help="torus surgery")
    p.add_argument("input")
    p.add_argument("--effect", required=True, help="kill, undo or torsion:p")
    p.add_argument("--p", type=int, default=1, help="torsion order for --effect torsion")
    p.add_argument("--q", type=int, default=None, help="surgery coefficient 1/q")
    p.add_argument("--luttinger", action="store_true", help="symplectic Luttinger surgery")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_surger)

    p = sub.add_parser("blowup", help="blow up n points")
    p.add_argument("input")
    p.add_argument("-n", "--n", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("check", help="bf | ht | ricci | property:R|E|Mu")
    p.add_argument("what")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--N", help="the b+ = 0 tail for ricci")
    strict = p.add_mutually_exclusive_group()
    strict.add_argument("--strict", action="store_true", help="strict inequalities for ht (the default)")
    strict.add_argument("--weak", action="store_true", help="non-strict inequalities for ht")
    p.add_argument("--inequality", choices=["classic", "gromov_1295", "gromov_81", "entropy_54"])
    _add_assert(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="witness search")
    p.add_argument("--kind", required=True, choices=["R", "E", "Mu", "mu", "r", "e"])
    p.add_argument("--summands", required=True, help="comma separated descriptor files or catalog specs")
    for name, lo in (("g", 3), ("h", 3), ("l1", 1), ("l2", 1)):
        p.add_argument(f"--{name}max", type=int, required=True)
        p.add_argument(f"--{name}min", type=int, default=lo)
    p.add_argument("--alpha", type=parse_range, default=(2, 10))
    p.add_argument("--beta", type=parse_range, default=(0, 10))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--first", action="store_true")
    mode.add_argument("--all", action="store_true", help="every witness (the default)")
    p.add_argument("--csv", help="write CSV here ('-' for stdout, replacing the JSON)")
    p.add_argument("--no-assemble", action="store_true", help="skip building descriptors for witnesses")
    p.add_argument("--emit-descriptor", help="write the first witness's descriptor here")
    _add_assert(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-lemmas", help="closed forms vs additivity")
    p.add_argument("--id", action="append", choices=sorted(FORMULAS))
    p.add_argument("--grid", action="append", help="e.g. 'g=3,5 h=3..7 x=k3'")
    _add_assert(p)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("scan", help="geography lattice scan")
    p.add_argument("--a", type=parse_range, required=True)
    p.add_argument("--b", type=parse_range, required=True)
    p.add_argument("--mod8", action="store_true")
    p.add_argument("--csv", help="write CSV here ('-' for stdout, replacing the JSON)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("eval", help="curvature bounds for (#X_m) # N")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--N", required=True)
    p.add_argument("--k", help="also bound lambda-bar_k, k >= 2/3 (e.g. 1 or 3/4)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("validate", help="consistency check of a descriptor")
    p.add_argument("input", nargs="?", default="-")
    _add_assert(p)
    p.set_defaults(func=cmd_validate)
    return parser


_NEG_RANGE = re.compile(r"^-\d+(\.\.-?\d+)?$")


def _glue_negative(argv: list[str]) -> list[str]:
    """Turn ``--b -12..-2`` into ``--b=-12..-2`` so argparse does not read it as a flag."""
    out: list[str] = []
    for tok in argv:
        if out and _NEG_RANGE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None) -> int:
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if not args.quiet:
        print(f"fourfold {__version__}", file=sys.stderr)
    digits = args.pi2_digits
    try:
        if digits is None and os.environ.get(ENV_DIGITS):
            digits = int(os.environ[ENV_DIGITS])
        ctx = use_pi2_interval(certified_pi2_interval(digits)) if digits is not None else contextlib.nullcontext()
        with ctx:
            args.func(args)
    except _Fail:
        return EXIT_ASSERT
    except (FourfoldError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fourfold: error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def main() -> None:
    sys.exit(run())
