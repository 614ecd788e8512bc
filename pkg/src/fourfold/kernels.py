"""Backend selection for the grid kernels.

The compiled extension is used when it imported and the inputs are small
enough for 64-bit arithmetic; otherwise the pure-Python twin runs.  Set
``FOURFOLD_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if os.environ.get("FOURFOLD_PURE_PYTHON"):
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"
_SAFE = 1 << 62


def available_backends() -> list[str]:
    return ["compiled", "python"] if _ckernels is not None else ["python"]


def _pick(backend: str | None, fits: bool):
    if backend == "python":
        return _pykernels
    if backend == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        if not fits:
            raise OverflowError("inputs exceed the 64-bit range of the compiled kernel")
        return _ckernels
    return _ckernels if (_ckernels is not None and fits) else _pykernels


def _mx(xs) -> int:
    return max((abs(x) for x in xs), default=0)


def scan_re(gs, hs, l1_range, l2_range, sm, sp, v, j, c, xl, xh, xden, backend=None):
    gs, hs = list(gs), list(hs)
    (l1_lo, l1_hi), (l2_lo, l2_hi) = l1_range, l2_range
    big_g = (_mx(gs) + 1) * (_mx(hs) + 1)
    big_i = _mx([sm, sp]) + 4 * big_g + 4 * (abs(j) + _mx([l1_lo, l1_hi])) + 6 * _mx([l2_lo, l2_hi])
    big_k = 24 * big_g + abs(v)
    fits = abs(c) * big_i * xden < _SAFE and big_k * _mx([xl, xh]) < _SAFE
    impl = _pick(backend, fits)
    return impl.scan_re(gs, hs, l1_lo, l1_hi, l2_lo, l2_hi, sm, sp, v, j, c, xl, xh, xden)


def scan_mu(alphas, betas, gs, hs, l1_range, l2_range, sm, sp, j, backend=None):
    alphas, betas, gs, hs = list(alphas), list(betas), list(gs), list(hs)
    (l1_lo, l1_hi), (l2_lo, l2_hi) = l1_range, l2_range
    big_g = (_mx(gs) + 1) * (_mx(hs) + 1)
    bound = 27 * (_mx([sm, sp]) + 96 * _mx(alphas) + 16 * _mx(betas) + 20 * big_g
                  + 4 * (abs(j) + _mx([l1_lo, l1_hi])) + 6 * _mx([l2_lo, l2_hi]))
    impl = _pick(backend, bound < _SAFE)
    return impl.scan_mu(alphas, betas, gs, hs, l1_lo, l1_hi, l2_lo, l2_hi, sm, sp, j)


def geography_codes(a_range, b_range, backend=None):
    (a_lo, a_hi), (b_lo, b_hi) = a_range, b_range
    fits = 4 * _mx([a_lo, a_hi, b_lo, b_hi]) < _SAFE
    impl = _pick(backend, fits)
    return impl.geography_codes(a_lo, a_hi, b_lo, b_hi)
