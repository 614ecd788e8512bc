"""Pure-Python grid kernels.

Mirrors ``_ckernels.pyx`` line for line; used when the extension is not
built or when inputs could overflow 64-bit integers.  Every function returns
a flat list of ints.

Codes for the R/E scan: 1 = all conditions certified, -1 = some condition
needs a finer pi^2 bracket, points that certainly fail are omitted.  The
bracket on x = 1/pi^2 is ``xl/xden <= x <= xh/xden``.
"""


def _side(c, i, k, xl, xh, xden):
    # sign of c*i - k*x with x in [xl/xden, xh/xden]; k >= 0
    lhs = c * i * xden
    if lhs > k * xh:
        return 1
    if lhs <= k * xl:
        return 0
    return -1


def scan_re(gs, hs, l1_lo, l1_hi, l2_lo, l2_hi, sm, sp, v, j, c, xl, xh, xden):
    out = []
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
                    out += [g, h, l1, l2, 1 if s2 == 1 and s3 == 1 else -1]
    return out


def scan_mu(alphas, betas, gs, hs, l1_lo, l1_hi, l2_lo, l2_hi, sm, sp, j):
    out = []
    for a in alphas:
        for b in betas:
            if (4 * a + 2 * b - 1) % 4 != 3:
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
                            out += [a, b, g, h, l1, l2]
    return out


EXCEPTIONAL = ((7, -3), (11, -3), (13, -5), (15, -7))


def geography_codes(a_lo, a_hi, b_lo, b_hi):
    """Per point, a-major: 0 realized, 1 exceptional, 2/3/4 first failing condition."""
    out = []
    for a in range(a_lo, a_hi + 1):
        for b in range(b_lo, b_hi + 1):
            if 2 * a + 3 * b < 0:
                out.append(2)
            elif (a + b) % 4 != 0:
                out.append(3)
            elif b > -2:
                out.append(4)
            elif (a, b) in EXCEPTIONAL:
                out.append(1)
            else:
                out.append(0)
    return out
