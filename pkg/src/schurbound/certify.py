"""Block-matrix constructions pairing residue tuples with Cartan
classes, and the resulting multiplier-norm lower-bound certificates.

For a polygon with an incrementable vertex i and governing break m, the
maps alpha (block upper-triangular, diagonal q^{-slope}) and beta
(unitriangular) turn a residue tuple (a_1..a_n, b, x_1..x_n, y) into a
product alpha beta whose Cartan class is decided by
w = sigma(y) - (sum_k sigma(a_k) sigma(x_k) + sigma(b)) mod q^m:
w = 0 gives the class of the polygon itself, w = q^{m-1} gives the
class with vertex i raised.  Feeding a class function through this
correspondence bounds its two-variable multiplier norm from below by
q^{eps m} |u - v| / 2 per admissible pair.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .padic import QMatrix, q_power
from .polygons import Polygon
from .residue import epsilon_rate, is_prime


def governing_data(poly, i, n):
    """Which certificate rule applies to raising vertex i, and the
    governing break.

    Rule 16 (direct construction) needs r - i >= n; rule 17 (the
    reflected construction) needs i - 1 >= n; both need the raised
    vector to stay in the cone.  Returns (rule, break) trying 16 first.

    Raises:
        InputError: neither rule applies.
    """
    r = poly.r
    if not 1 <= i <= r:
        raise InputError(f"vertex {i} outside 1..{r}")
    if not poly.can_increment(i):
        raise InputError(f"raising vertex {i} of {poly.lam} leaves the cone")
    if r - i >= n:
        return 16, poly.break_at(i + 1)
    if i - 1 >= n:
        return 17, poly.break_at(i - 1)
    raise InputError(
        f"vertex {i} admits neither construction at r={r}, n={n} "
        "(need r - i >= n or i - 1 >= n)"
    )


def build_alpha_beta(poly, i, n, tup, q):
    """The two triangular factors attached to a residue tuple.

    alpha is block-diagonal-plus-top-row: outside a distinguished
    (n+2)-block at rows/columns i..i+n+1 it is diagonal with entries
    q^{-mu_j} (mu the slopes); the block's first row carries
    -q^{-mu_i} sigma(a_k) and -q^{-(mu_i+m)} sigma(b).  beta is the
    identity except for the block's last column q^{-m} sigma(..),
    sigma the canonical section into [0, q^m).  Both have determinant
    exactly 1, and the (1, n+2) block entry of the product is
    q^{-(mu_i+m)} w.

    Args:
        poly: Polygon with vertex i incrementable (direct rule, so
            r - i >= n is also required; reflect first for the other
            rule).
        i: vertex in 1..r-n.
        n: number of bilinear coordinates, >= 1.
        tup: iterable (a_1..a_n, b, x_1..x_n, y) of ring elements.
        q: prime.

    Returns:
        (alpha, beta, w): QMatrix pair and the integer residue w.
    """
    if not is_prime(q):
        raise InputError(f"q must be prime, got {q}")
    if n < 1:
        raise InputError(f"need n >= 1, got {n}")
    r = poly.r
    if not 1 <= i <= r - n:
        raise InputError(f"need 1 <= i <= r - n, got i={i}, r={r}, n={n}")
    if not poly.can_increment(i):
        raise InputError(f"raising vertex {i} of {poly.lam} leaves the cone")
    m = poly.break_at(i + 1)
    if m < 1:
        raise InputError(f"governing break at vertex {i + 1} must be >= 1, got {m}")
    tup = list(tup)
    if len(tup) != 2 * n + 2:
        raise InputError(f"tuple must have 2n + 2 = {2 * n + 2} entries, got {len(tup)}")
    Q = q**m
    a = [int(t) % Q for t in tup[:n]]
    b = int(tup[n]) % Q
    x = [int(t) % Q for t in tup[n + 1 : 2 * n + 1]]
    y = int(tup[2 * n + 1]) % Q

    mu = poly.slopes  # mu[j-1] is the j-th slope
    size = r + 1
    lo = i - 1  # 0-based first row/col of the distinguished block

    def e(k):
        return q_power(q, -k)

    alpha = [[Fraction(0)] * size for _ in range(size)]
    beta = [[Fraction(0)] * size for _ in range(size)]
    for j in range(size):
        beta[j][j] = Fraction(1)
        if lo <= j <= lo + n + 1:
            continue
        alpha[j][j] = e(mu[j])
    # block diagonal: mu_i, mu_{i+2}, ..., mu_{i+n+1}, mu_{i+1}
    alpha[lo][lo] = e(mu[i - 1])
    for k in range(1, n + 1):
        alpha[lo + k][lo + k] = e(mu[i + k])
    alpha[lo + n + 1][lo + n + 1] = e(mu[i])
    # block first row and last column
    for k in range(1, n + 1):
        alpha[lo][lo + k] = -e(mu[i - 1]) * a[k - 1]
    alpha[lo][lo + n + 1] = -e(mu[i - 1] + m) * b
    beta[lo][lo + n + 1] = e(m) * y
    for k in range(1, n + 1):
        beta[lo + k][lo + n + 1] = e(m) * x[k - 1]

    w = y - (sum(ak * xk for ak, xk in zip(a, x)) + b)
    return (
        QMatrix(tuple(tuple(row) for row in alpha), q),
        QMatrix(tuple(tuple(row) for row in beta), q),
        w,
    )


def classify_residue(w, q, m):
    """Which of the two certified classes a residue falls in.

    Returns "base" when w = 0 mod q^m (class of the polygon itself),
    "raised" when w = q^{m-1} mod q^m, and None otherwise.
    """
    wm = w % q**m
    if wm == 0:
        return "base"
    if wm == q ** (m - 1):
        return "raised"
    return None


@dataclass
class CertificateEntry:
    polygon: Polygon
    index: int
    rule: int
    governing_break: int
    u: complex
    v: complex
    contribution: float


@dataclass
class Certificate:
    """Reproducible record of a multiplier-norm lower bound.

    value = max over entries of q^{eps m} |u - v| / 2, where m is the
    entry's governing break; each entry names the rule that made the
    pair admissible.  Pairs that admit no rule are preserved in
    warnings and contribute nothing.
    """

    q: int
    n: int
    p: float
    eps: float
    value: float
    entries: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def _eval_class_function(f, poly):
    if callable(f):
        return f(poly)
    key = poly.lam
    if key in f:
        return f[key]
    return None


def obstruction_certificate(f, pairs, q, n, p):
    """Lower bound on the two-variable multiplier norm of a class
    function from its increments across admissible vertex raises.

    Args:
        f: callable Polygon -> complex, or a mapping from coordinate
            tuples to complex values.
        pairs: iterable of (polygon, vertex index); polygons may be
            Polygon instances or coordinate tuples.
        q: prime.
        n: bilinear-coordinate count, >= 1.
        p: exponent with p > 2 + 2/n (positive rate).

    Returns:
        Certificate; inadmissible pairs (no applicable rule, or f
        undefined on either class) are recorded as warnings.
    """
    if not is_prime(q):
        raise InputError(f"q must be prime, got {q}")
    eps = epsilon_rate(n, p)
    if eps <= 0:
        raise InputError(f"need p > 2 + 2/n for a positive rate; p={p} n={n}")
    cert = Certificate(q=q, n=n, p=float(p), eps=eps, value=0.0)
    for poly, i in pairs:
        if not isinstance(poly, Polygon):
            poly = Polygon(tuple(poly))
        try:
            rule, m = governing_data(poly, i, n)
        except InputError as exc:
            cert.warnings.append((poly, i, str(exc)))
            continue
        u = _eval_class_function(f, poly)
        v = _eval_class_function(f, poly.increment(i))
        if u is None or v is None:
            cert.warnings.append((poly, i, "class function undefined on the pair"))
            continue
        u = complex(u)
        v = complex(v)
        contribution = float(q) ** (eps * m) * abs(u - v) / 2.0
        cert.entries.append(
            CertificateEntry(
                polygon=poly,
                index=i,
                rule=rule,
                governing_break=m,
                u=u,
                v=v,
                contribution=contribution,
            )
        )
        cert.value = max(cert.value, contribution)
    return cert
