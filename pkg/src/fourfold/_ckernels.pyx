# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels; same contract as ``_pykernels``.

Callers guarantee that every intermediate fits in a signed 64-bit integer.
"""

ctypedef long long i64


cdef inline int _side(i64 c, i64 i, i64 k, i64 xl, i64 xh, i64 xden):
    cdef i64 lhs = c * i * xden
    if lhs > k * xh:
        return 1
    if lhs <= k * xl:
        return 0
    return -1


cdef inline i64 _pmod(i64 a, i64 m):
    cdef i64 r = a % m
    return r + m if r < 0 else r


def scan_re(gs, hs, i64 l1_lo, i64 l1_hi, i64 l2_lo, i64 l2_hi,
            i64 sm, i64 sp, i64 v, i64 j, i64 c, i64 xl, i64 xh, i64 xden):
    cdef list out = []
    cdef i64 g, h, G, k, l1, l2, t
    cdef int s2, s3
    for g in gs:
        for h in hs:
            G = (g - 1) * (h - 1)
            k = 24 * G + v
            for l1 in range(l1_lo, l1_hi + 1):
                t = 4 * (j + l1)
                for l2 in range(l2_lo, l2_hi + 1):
                    if 3 * (t + l2) <= sp + 4 * G:
                        continue
                    s3 = _side(c, sp + 4 * G - t - l2, k, xl, xh, xden)
                    if s3 == 0:
                        continue
                    s2 = _side(c, sm + 4 * G - t + 5 * l2, k, xl, xh, xden)
                    if s2 == 0:
                        continue
                    out.extend((g, h, l1, l2, 1 if (s2 == 1 and s3 == 1) else -1))
    return out


def scan_mu(alphas, betas, gs, hs, i64 l1_lo, i64 l1_hi, i64 l2_lo, i64 l2_hi,
            i64 sm, i64 sp, i64 j):
    cdef list out = []
    cdef i64 a, b, g, h, G, l1, l2, t
    for a in alphas:
        for b in betas:
            if _pmod(4 * a + 2 * b - 1, 4) != 3:
                continue
            for g in gs:
                for h in hs:
                    G = (g - 1) * (h - 1)
                    for l1 in range(l1_lo, l1_hi + 1):
                        t = 4 * (j + l1)
                        for l2 in range(l2_lo, l2_hi + 1):
                            if 27 * (sm + 8 * (12 * a + b)) <= 20 * G + 27 * (t - 5 * l2):
                                continue
                            if 27 * (sp + 8 * b) <= 20 * G + 27 * (t + l2):
                                continue
                            if 3 * (t + l2) <= sp + 8 * b + 4 * G:
                                continue
                            out.extend((a, b, g, h, l1, l2))
    return out


def geography_codes(i64 a_lo, i64 a_hi, i64 b_lo, i64 b_hi):
    cdef list out = []
    cdef i64 a, b
    for a in range(a_lo, a_hi + 1):
        for b in range(b_lo, b_hi + 1):
            if 2 * a + 3 * b < 0:
                out.append(2)
            elif _pmod(a + b, 4) != 0:
                out.append(3)
            elif b > -2:
                out.append(4)
            elif (a == 7 and b == -3) or (a == 11 and b == -3) or (a == 13 and b == -5) or (a == 15 and b == -7):
                out.append(1)
            else:
                out.append(0)
    return out
