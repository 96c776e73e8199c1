"""Interpreted fallback for the series kernels.

Line-for-line mirror of the compiled module: same recurrence layout,
same Kahan compensation, same combination order, so results match the
compiled backend bit for bit on the same platform (both defer to libm
for pow and sqrt).  Used when the extension is unavailable or when
SCHURBOUND_PURE is set.
"""

from math import pow, sqrt


def power_blocks(ar, ai, br, bi, x0, x1, p, n0, n1, block, a0, b0, a1, b1):
    """Kahan block sums of (2n+1)|a P_n(x0) - b P_n(x1)|^p over [n0, n1).

    Returns (blocks, a0, b0, a1, b1): per-block compensated sums plus
    the advanced recurrence state.  The final block may be short.
    """
    out = []
    s = 0.0
    comp = 0.0
    filled = 0
    for n in range(n0, n1):
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x0
        else:
            c = ((2.0 * n - 1.0) * x0 * b0 - (n - 1.0) * a0) / n
        a0 = b0
        b0 = c
        u = c
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x1
        else:
            c = ((2.0 * n - 1.0) * x1 * b1 - (n - 1.0) * a1) / n
        a1 = b1
        b1 = c
        v = c
        zr = ar * u - br * v
        zi = ai * u - bi * v
        m = sqrt(zr * zr + zi * zi)
        t = (2.0 * n + 1.0) * pow(m, p)
        y = t - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
        filled += 1
        if filled == block:
            out.append(s)
            s = 0.0
            comp = 0.0
            filled = 0
    if filled > 0:
        out.append(s)
    return out, a0, b0, a1, b1


def sup_scan(ar, ai, br, bi, x0, x1, n0, n1, a0, b0, a1, b1, best, best_n):
    """Running maximum of |a P_n(x0) - b P_n(x1)| over [n0, n1).

    Returns (best, best_n, a0, b0, a1, b1) with the recurrence state
    advanced; (best, best_n) carry in the maximum found so far.
    """
    for n in range(n0, n1):
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x0
        else:
            c = ((2.0 * n - 1.0) * x0 * b0 - (n - 1.0) * a0) / n
        a0 = b0
        b0 = c
        u = c
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x1
        else:
            c = ((2.0 * n - 1.0) * x1 * b1 - (n - 1.0) * a1) / n
        a1 = b1
        b1 = c
        v = c
        zr = ar * u - br * v
        zi = ai * u - bi * v
        m = sqrt(zr * zr + zi * zi)
        if m > best:
            best = m
            best_n = n
    return best, best_n, a0, b0, a1, b1


def ratio_scan(x, n1):
    """Envelope-constant scan over 1 <= n < n1 at evaluation point x.

    Returns (rmax, smax):
      rmax = max |P_n(0) - P_n(x)| sqrt(n+1) / min(n|x|, 1)  (0 if x == 0)
      smax = max sqrt(n+1) |P_n(x)|
    """
    a0 = 0.0
    b0 = 0.0
    a1 = 0.0
    b1 = 0.0
    rmax = 0.0
    smax = 0.0
    ax = x if x >= 0.0 else -x
    for n in range(0, n1):
        if n == 0:
            c = 1.0
        elif n == 1:
            c = 0.0
        else:
            c = ((2.0 * n - 1.0) * 0.0 * b0 - (n - 1.0) * a0) / n
        a0 = b0
        b0 = c
        u = c
        if n == 0:
            c = 1.0
        elif n == 1:
            c = x
        else:
            c = ((2.0 * n - 1.0) * x * b1 - (n - 1.0) * a1) / n
        a1 = b1
        b1 = c
        v = c
        if n == 0:
            continue
        sq = sqrt(n + 1.0)
        if ax > 0.0:
            mn = n * ax
            if mn > 1.0:
                mn = 1.0
            r = (u - v if u >= v else v - u) * sq / mn
            if r > rmax:
                rmax = r
        r = sq * (v if v >= 0.0 else -v)
        if r > smax:
            smax = r
    return rmax, smax
