"""Exact q-adic arithmetic on rational matrices and the recovery of
Cartan invariants from minor valuations.

Scalars are fractions.Fraction; absolute values are never materialized
as floats, every comparison happens on integer valuations.  The
invariant vector of a determinant-one matrix A is
lambda_i = -(minimum q-adic valuation over all i x i minors of A),
and convexity of the resulting polygon is a theorem, checked here as an
internal consistency assertion.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConsistencyError, InputError
from .polygons import Polygon, polygon_check
from .residue import is_prime

MINOR_SIZE_CAP = 10


def valuation(x, q):
    """q-adic valuation of a rational; +inf for 0.

    v_q(a/b) = v_q(a) - v_q(b).
    """
    if not is_prime(q):
        raise InputError(f"q must be prime, got {q}")
    x = Fraction(x)
    if x == 0:
        return math.inf
    num, den = x.numerator, x.denominator

    def vq(n):
        n = abs(n)
        v = 0
        while n % q == 0:
            n //= q
            v += 1
        return v

    return vq(num) - vq(den)


def q_power(q, k):
    """q^k as an exact Fraction, any integer k."""
    return Fraction(q) ** k


@dataclass(frozen=True)
class QMatrix:
    """Square matrix of exact rationals over the q-adic ground field."""

    rows: tuple
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise InputError(f"q must be prime, got {self.q}")
        n = len(self.rows)
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise InputError("QMatrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self):
        return len(self.rows)

    def __matmul__(self, other):
        if not isinstance(other, QMatrix) or other.q != self.q or other.n != self.n:
            raise InputError("can only multiply equal-size QMatrix over the same q")
        n = self.n
        bt = list(zip(*other.rows))
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
            for row in self.rows
        )
        return QMatrix(out, self.q)

    def transpose(self):
        return QMatrix(tuple(zip(*self.rows)), self.q)

    def det(self):
        # exact fraction Gaussian elimination with partial pivoting
        n = self.n
        M = [list(row) for row in self.rows]
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if M[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                det = -det
            det *= M[c][c]
            inv = 1 / M[c][c]
            for r in range(c + 1, n):
                if M[r][c] != 0:
                    factor = M[r][c] * inv
                    M[r] = [a - factor * b for a, b in zip(M[r], M[c])]
        return det

    @classmethod
    def identity(cls, n, q):
        return cls(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            ),
            q,
        )

    @classmethod
    def diagonal(cls, entries, q):
        entries = list(entries)
        n = len(entries)
        return cls(
            tuple(
                tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n))
                for i in range(n)
            ),
            q,
        )


def _layer_minors(rows, n):
    # dets[rowmask][colmask] for all equal-size index subsets, built by
    # Laplace expansion along the newest (highest-index) row so every
    # sub-minor is computed once and shared
    zero = Fraction(0)
    one = Fraction(1)
    dets = {0: {0: one}}
    for size in range(1, n + 1):
        start_sign = 1 if size % 2 == 1 else -1
        for rset in combinations(range(n), size):
            r = rset[-1]
            pmask = 0
            for x in rset[:-1]:
                pmask |= 1 << x
            prev = dets[pmask]
            row_r = rows[r]
            cur = {}
            for cset in combinations(range(n), size):
                cmask = 0
                for c in cset:
                    cmask |= 1 << c
                s = zero
                sign = start_sign
                for c in cset:
                    e = row_r[c]
                    if e:
                        if sign > 0:
                            s += e * prev[cmask & ~(1 << c)]
                        else:
                            s -= e * prev[cmask & ~(1 << c)]
                    sign = -sign
                cur[cmask] = s
            dets[pmask | (1 << r)] = cur
    layers = [dict() for _ in range(n + 1)]
    for rmask, cols in dets.items():
        layers[rmask.bit_count()][rmask] = cols
    return layers


def _minor_layers(A):
    n = A.n
    if n > MINOR_SIZE_CAP:
        raise InputError(f"minor enumeration capped at size {MINOR_SIZE_CAP}, got {n}")
    return _layer_minors(A.rows, n)


def minor_min_valuations(A, layers=None):
    """For each size i = 1..n, the minimum q-adic valuation over all
    i x i minors of A.

    Returns:
        List of length n; entry i-1 may be +inf if every minor of that
        size vanishes (impossible for invertible A at i <= n).
    """
    layers = layers if layers is not None else _minor_layers(A)
    out = []
    for size in range(1, A.n + 1):
        best = math.inf
        for cols in layers[size].values():
            for d in cols.values():
                if d != 0:
                    v = valuation(d, A.q)
                    if v < best:
                        best = v
        out.append(best)
    return out


def cartan_invariants(A):
    """Invariant vector classifying the double coset K A K.

    lambda_i = -(min valuation over i x i minors), i = 1..n-1; requires
    det(A) = 1.  The result always passes the polygon convexity check;
    a violation would mean an arithmetic bug and raises.

    Args:
        A: QMatrix with determinant exactly 1.

    Returns:
        Polygon of length n - 1.
    """
    n = A.n
    layers = _minor_layers(A)
    det = layers[n][(1 << n) - 1][(1 << n) - 1]
    if det != 1:
        raise InputError(f"matrix must have determinant 1, got {det}")
    mins = minor_min_valuations(A, layers=layers)
    lam = tuple(-mins[i] for i in range(n - 1))
    ok, _, _ = polygon_check(lam)
    if not ok:
        raise ConsistencyError(
            f"recovered invariants {lam} are not a convex polygon; "
            "this indicates a bug in the minor enumeration"
        )
    return Polygon(lam)


def build_D(poly, q):
    """Diagonal coset representative diag(q^{-mu_1}, ..., q^{-mu_{r+1}})
    for the polygon's slope vector mu; exact determinant 1.

    Args:
        poly: Polygon in the convex cone.
        q: prime.

    Returns:
        QMatrix.
    """
    if isinstance(poly, (tuple, list)):
        poly = Polygon(tuple(poly))
    ok, slopes, _ = polygon_check(poly.lam)
    if not ok:
        raise InputError(f"{poly.lam} is not in the convex cone")
    return QMatrix.diagonal([q_power(q, -mu) for mu in slopes], q)


def random_unimodular(size, q, rng, ops=None):
    """Seeded determinant-one integer matrix: a product of elementary
    shears (add c times one row/column to another, c in -3..3).

    Entries are q-adic integers and the determinant is exactly 1, so
    the result lies in the stabilizer group whose double cosets the
    invariants classify; conjugating a representative by two of these
    must leave cartan_invariants unchanged.

    Args:
        size: matrix dimension >= 1.
        q: prime (stored on the result, not used in generation).
        rng: numpy Generator.
        ops: shear count; default drawn uniformly from 20..60.

    Returns:
        QMatrix.
    """
    if size < 1:
        raise InputError(f"need size >= 1, got {size}")
    if ops is None:
        ops = int(rng.integers(20, 61))
    rows = [
        [Fraction(1 if i == j else 0) for j in range(size)]
        for i in range(size)
    ]
    for _ in range(ops):
        i, j = rng.integers(0, size, size=2)
        if i == j:
            continue
        c = int(rng.integers(-3, 4))
        if c == 0:
            c = 1
        if rng.integers(0, 2):
            for k in range(size):
                rows[i][k] += c * rows[j][k]
        else:
            for k in range(size):
                rows[k][j] += c * rows[k][i]
    return QMatrix(rows, q)
