"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each row checks that both backends return identical output before timing.
"""
import argparse
import timeit

from fourfold import kernels
from fourfold.families import _x_bracket

ODD = list(range(3, 40, 2))

CASES = {
    "scan_re g,h<=39 l1,l2<=40": lambda b: kernels.scan_re(
        ODD, ODD, (1, 40), (1, 40), 64, 64, 192, 2, 1295, *_x_bracket(), backend=b),
    "scan_mu a<=10 b<=10 g,h<=15 l<=12": lambda b: kernels.scan_mu(
        range(2, 11), range(0, 11), ODD[:7], ODD[:7], (1, 12), (1, 12), 48, 0, 2, backend=b),
    "geography a<=2000 b>=-400": lambda b: kernels.geography_codes((0, 2000), (-400, -2), backend=b),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<36}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in CASES.items():
        outputs = {b: fn(b) for b in backends}
        if len({tuple(o) for o in outputs.values()}) != 1:
            raise SystemExit(f"{name}: backends disagree")
        times = {b: min(timeit.repeat(lambda b=b: fn(b), number=1, repeat=args.repeat)) for b in backends}
        row = f"{name:<36}" + "".join(f"{times[b]:>11.4f}s" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['compiled']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
