"""Residue rings Z/q^m, additive characters, and the shifted averaging
matrices T_k together with exact formulas for their Schatten norms.

T_k is the q^{m(n+1)}-dimensional 0/1-pattern matrix, scaled by q^{-mn},
whose entry at row (a_1..a_n, b), column (x_1..x_n, y) is nonzero iff
y = sum_i a_i x_i + b + q^k in the ring (q^m = 0, so k = m means no
shift).  Expanding the defining constraint over additive characters
splits u T_m - v T_{m-1} into orthogonal blocks indexed by characters,
one scaled Fourier matrix per block, which yields the entire singular
spectrum in closed form.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError

DEFAULT_DIM_CAP = 4096


def is_prime(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ResidueRing:
    """Z/q^m with q prime; elements are canonical integers in [0, q^m)."""

    q: int
    m: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise InputError(f"q must be prime, got {self.q}")
        if self.m < 1:
            raise InputError(f"m must be >= 1, got {self.m}")

    @property
    def size(self):
        return self.q**self.m

    def reduce(self, x):
        return x % self.size


@dataclass(frozen=True)
class AdditiveCharacter:
    """x -> exp(2 pi i t x / q^m) on a residue ring."""

    ring: ResidueRing
    t: int

    def __post_init__(self):
        if not 0 <= self.t < self.ring.size:
            raise InputError(f"character index {self.t} outside [0, {self.ring.size})")

    @property
    def nondegenerate(self):
        return self.t % self.ring.q != 0

    def __call__(self, x):
        return cmath.exp(2j * math.pi * self.t * (x % self.ring.size) / self.ring.size)


def additive_characters(ring, cap=DEFAULT_DIM_CAP):
    """All q^m additive characters of the ring.

    Exactly (1 - 1/q) q^m of them are nondegenerate (index not
    divisible by q); each satisfies char(q^{m-1}) = exp(2 pi i t / q).

    Args:
        ring: ResidueRing with q^m <= cap.
        cap: size guard.

    Returns:
        List of AdditiveCharacter, index order 0..q^m - 1.
    """
    if ring.size > cap:
        raise InputError(f"ring size {ring.size} exceeds cap {cap}")
    return [AdditiveCharacter(ring, t) for t in range(ring.size)]


def character_matrix(char):
    """The q^m x q^m matrix (char(a x))_{a, x}.

    For nondegenerate characters, q^{-m/2} times this matrix is unitary
    (it is a Fourier transform matrix).
    """
    Q = char.ring.size
    ax = (np.arange(Q)[:, None] * np.arange(Q)[None, :]) % Q
    return np.exp(2j * np.pi * char.t * ax / Q)


@dataclass(frozen=True)
class TkParams:
    """Parameters (q, m, n, k) of a T_k matrix, with a dimension guard."""

    q: int
    m: int
    n: int
    k: int
    cap: int = DEFAULT_DIM_CAP

    def __post_init__(self):
        if not is_prime(self.q):
            raise InputError(f"q must be prime, got {self.q}")
        if self.m < 1 or self.n < 1:
            raise InputError(f"need m, n >= 1, got m={self.m} n={self.n}")
        if not 0 <= self.k <= self.m:
            raise InputError(f"k must lie in [0, m], got {self.k}")
        if self.dim > self.cap:
            raise InputError(f"dimension {self.dim} exceeds cap {self.cap}")

    @property
    def ring(self):
        return ResidueRing(self.q, self.m)

    @property
    def dim(self):
        return self.q ** (self.m * (self.n + 1))


def _digit_split(count, Q, n):
    # decompose 0..count-1 into n+1 base-Q digits, least significant first
    idx = np.arange(count)
    digits = np.empty((n + 1, count), dtype=np.int64)
    for d in range(n + 1):
        digits[d] = idx % Q
        idx = idx // Q
    return digits


def build_Tk(params):
    """Dense T_k for the given parameters.

    Rows are tuples (a_1..a_n, b), columns (x_1..x_n, y), both in
    lexicographic order with b (resp. y) the fastest-varying (least
    significant base-q^m) coordinate.  Every row and column holds
    exactly q^{mn} entries equal to q^{-mn}; T_k fixes the all-ones
    vector.

    Args:
        params: TkParams.

    Returns:
        dim x dim float ndarray.
    """
    q, m, n, k = params.q, params.m, params.n, params.k
    Q = q**m
    dim = params.dim
    digits = _digit_split(dim, Q, n)
    b = digits[0]
    a = digits[1:]  # a[i-1] holds a_{n+1-i}; ordering is norm-irrelevant
    y = digits[0]
    x = digits[1:]
    shift = 0 if k == m else q**k
    # target[r, c] = sum_i a_i[r] x_i[c] + b[r] + shift  (mod Q)
    target = (a.T.astype(np.int64) @ x + b[:, None] + shift) % Q
    M = (y[None, :] == target).astype(float)
    M *= float(q) ** (-m * n)
    return M


def epsilon_rate(n, p):
    """The decay exponent eps = n(1/2 - 1/p) - 1/p; positive iff
    p > 2 + 2/n."""
    if n < 1:
        raise InputError(f"need n >= 1, got {n}")
    p = float(p)
    if p <= 2.0:
        raise InputError(f"rate defined for p > 2, got {p}")
    if math.isinf(p):
        return n * 0.5
    return n * (0.5 - 1.0 / p) - 1.0 / p


def tk_diff_norm_closed_form(q, m, n, p):
    """Exact ||T_m - T_{m-1}||_{S^p} from the character decomposition.

    Equals [q^{m-1} sum_{s=1}^{q-1} (2 sin(pi s/q))^p]^{1/p}
    * q^{(1/p - 1/2) m n}: the symbol depends only on y - b, each
    nondegenerate character block is a scaled Fourier unitary, and the
    x-part enters as an n-fold tensor power.

    Args:
        q: prime.
        m, n: positive integers.
        p: exponent in (2, inf); p = inf returns the largest singular
            value.

    Raises:
        InputError: p <= 2 (the value is still computed and quoted in
            the message, but the decay regime of interest needs p > 2).
    """
    if not is_prime(q):
        raise InputError(f"q must be prime, got {q}")
    if m < 1 or n < 1:
        raise InputError(f"need m, n >= 1, got m={m} n={n}")
    p = float(p)
    if p != math.inf and p <= 2.0:
        value = _tk_diff_norm_any_p(q, m, n, p) if p > 0 else float("nan")
        raise InputError(
            f"p must exceed 2 (got {p}); the formula still evaluates to {value!r}"
        )
    return _tk_diff_norm_any_p(q, m, n, p)


def _tk_diff_norm_any_p(q, m, n, p):
    if p == math.inf:
        # largest block singular value: s maximizing |1 - e^{2 pi i s/q}|
        smax = max(2.0 * math.sin(math.pi * s / q) for s in range(1, q))
        return smax * float(q) ** (-0.5 * m * n)
    core = sum((2.0 * math.sin(math.pi * s / q)) ** p for s in range(1, q))
    return (q ** (m - 1) * core) ** (1.0 / p) * float(q) ** ((1.0 / p - 0.5) * m * n)


def tk_diff_spectrum(q, m, n, u=1.0, v=1.0):
    """Full singular spectrum of u T_m - v T_{m-1}, exactly.

    Grouped by character index t with j = min(v_q(t), m): the block
    contributes singular value |u - v e^{-2 pi i (t mod q)/q}|
    * q^{n(j-m)/2} with multiplicity q^{n(m-j)}.

    Args:
        q: prime; m, n: positive integers; u, v: complex coefficients.

    Returns:
        List of (sigma, multiplicity) pairs, descending in sigma, with
        an explicit (0.0, count) entry padding to the full dimension.
    """
    if not is_prime(q):
        raise InputError(f"q must be prime, got {q}")
    if m < 1 or n < 1:
        raise InputError(f"need m, n >= 1, got m={m} n={n}")
    u = complex(u)
    v = complex(v)
    entries = {}

    def add(sigma, mult):
        entries[sigma] = entries.get(sigma, 0) + mult

    # nondegenerate residues s != 0: q^{m-1} characters each, j = 0
    for s in range(1, q):
        factor = abs(u - v * cmath.exp(-2j * math.pi * s / q))
        add(factor * float(q) ** (-0.5 * n * m), q ** (m - 1) * q ** (n * m))
    # degenerate t = q^j t' with t' a unit, j = 1..m-1
    for j in range(1, m):
        count = (q - 1) * q ** (m - 1 - j)
        add(abs(u - v) * float(q) ** (0.5 * n * (j - m)), count * q ** (n * (m - j)))
    # t = 0: the all-ones eigenvector, eigenvalue u - v
    add(abs(u - v), 1)

    dim = q ** (m * (n + 1))
    total = sum(entries.values())
    assert total <= dim
    if total < dim:
        add(0.0, dim - total)
    return sorted(entries.items(), reverse=True)


def tk_diff_norm_from_spectrum(q, m, n, p, u=1.0, v=1.0):
    """Schatten p-norm of u T_m - v T_{m-1} via the exact spectrum."""
    p = float(p)
    spec = tk_diff_spectrum(q, m, n, u, v)
    top = spec[0][0]
    if top == 0.0:
        return 0.0
    if p == math.inf:
        return top
    return top * sum(mult * (s / top) ** p for s, mult in spec if s > 0) ** (1.0 / p)


@dataclass
class TkDiffReport:
    """Verification record for the shifted-difference norm bounds."""

    q: int
    m: int
    n: int
    p: float
    eps: float
    closed_form: float
    oracle: float
    rel_gap: float
    upper_bound: float
    upper_ok: bool
    u: complex = None
    v: complex = None
    shifted_norm: float = None
    shift_lower: float = None
    shift_lower_ok: bool = None


def verify_tk_diff(q, m, n, p, u=None, v=None, with_oracle=True, cap=DEFAULT_DIM_CAP):
    """Check the closed-form norm against the dense singular-value
    oracle and the two-sided bounds.

    The upper bound checked is ||T_m - T_{m-1}||_{S^p} <= 2 q^{-eps m}
    with eps = n(1/2 - 1/p) - 1/p; the lower bound (when u, v given) is
    ||u T_m - v T_{m-1}||_{S^p} >= |u - v|, which holds because the
    all-ones vector is a shared eigenvector with eigenvalue 1.

    Args:
        q, m, n, p: parameters with p > 2 + 2/n (so eps > 0).
        u, v: optional complex coefficients for the lower-bound check.
        with_oracle: also run a dense SVD (requires dim <= cap).
        cap: dimension guard for the dense routes.

    Returns:
        TkDiffReport.
    """
    p = float(p)
    eps = epsilon_rate(n, p)
    if eps <= 0:
        raise InputError(f"need p > 2 + 2/n for a positive rate; p={p} n={n}")
    closed = tk_diff_norm_closed_form(q, m, n, p)
    if with_oracle:
        from .schatten import schatten_norm

        Tm = build_Tk(TkParams(q, m, n, m, cap=cap))
        Tm1 = build_Tk(TkParams(q, m, n, m - 1, cap=cap))
        oracle = schatten_norm(Tm - Tm1, p)
    else:
        oracle = tk_diff_norm_from_spectrum(q, m, n, p)
    rel_gap = abs(closed - oracle) / max(closed, 1e-300)
    upper = 2.0 * float(q) ** (-eps * m)
    report = TkDiffReport(
        q=q,
        m=m,
        n=n,
        p=p,
        eps=eps,
        closed_form=closed,
        oracle=oracle,
        rel_gap=rel_gap,
        upper_bound=upper,
        upper_ok=closed <= upper * (1.0 + 1e-12),
    )
    if u is not None or v is not None:
        u = complex(u if u is not None else 1.0)
        v = complex(v if v is not None else 1.0)
        shifted = tk_diff_norm_from_spectrum(q, m, n, p, u, v)
        report.u = u
        report.v = v
        report.shifted_norm = shifted
        report.shift_lower = abs(u - v)
        report.shift_lower_ok = shifted >= abs(u - v) - 1e-9
    return report
