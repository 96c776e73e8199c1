"""Independent reference routes used by the test suite.

Nothing here imports the package under test.  Each oracle recomputes a
quantity by a different method than the library uses, so agreement is
evidence and disagreement is a bug on one side or the other.
"""

import itertools

import mpmath
import numpy as np
from scipy.optimize import minimize


def singular_values_mp(A, dps=50):
    """Singular values of a complex matrix at extended precision.

    Computed as square roots of the Hermitian eigenvalues of A*A, which
    exercises a different code path than LAPACK's SVD.

    Args:
        A: complex ndarray, any shape (m, n).
        dps: working decimal digits.

    Returns:
        Sorted (descending) list of mpmath.mpf singular values, length
        min(m, n).
    """
    with mpmath.workdps(dps):
        M = mpmath.matrix([[mpmath.mpc(z) for z in row] for row in A])
        H = M.H * M
        eigs = mpmath.eighe(H, eigvals_only=True)
        vals = sorted((mpmath.sqrt(max(e, 0)) for e in eigs), reverse=True)
    k = min(A.shape)
    return vals[-k:] if len(vals) > k else vals


def schatten_norm_mp(A, p, dps=50):
    """(sum sigma_k^p)^(1/p) at extended precision; p may be inf."""
    sv = singular_values_mp(A, dps=dps)
    with mpmath.workdps(dps):
        if p == mpmath.inf or p == float("inf"):
            return float(max(sv)) if sv else 0.0
        s = mpmath.fsum(mpmath.power(v, p) for v in sv)
        return float(mpmath.power(s, mpmath.mpf(1) / p))


def trace_pairing_loops(A, B):
    """Tr(AB) by an explicit double loop, no matmul."""
    m, n = A.shape
    assert B.shape == (n, m)
    total = 0j
    for x in range(m):
        for y in range(n):
            total += A[x, y] * B[y, x]
    return total


def _factorization_objective(flat, phi):
    # flat parametrizes an invertible real F (n x n); G^T = F^{-1} phi.
    n = phi.shape[0]
    F = flat.reshape(n, n)
    try:
        G = np.linalg.solve(F, phi)
    except np.linalg.LinAlgError:
        return 1e6
    if not np.all(np.isfinite(G)):
        return 1e6
    row = np.sqrt((F * F).sum(axis=1)).max()
    col = np.sqrt((G * G).sum(axis=0)).max()
    return row * col


def factorization_norm_search(phi, seeds=40, seed=0):
    """Brute-force factorization norm for small real symbols.

    Minimizes max_i ||f_i|| * max_j ||g_j|| over factorizations
    phi_ij = <f_i, g_j> with vectors in R^n, by writing the f_i as the
    rows of an invertible F (then G is forced) and running Nelder-Mead
    from many random starts.  Valid because real n x n symbols admit an
    optimal factorization in dimension <= n; for the 2x2 test symbols
    dimension 2 suffices.

    Args:
        phi: real square ndarray, small (n <= 4).
        seeds: number of random restarts.
        seed: RNG seed.

    Returns:
        Best objective value found (upper bound that empirically attains
        the norm for the symbols this suite uses).
    """
    n = phi.shape[0]
    rng = np.random.default_rng(seed)
    best = np.inf
    starts = [np.eye(n).ravel()]
    starts += [rng.standard_normal(n * n) for _ in range(seeds)]
    for x0 in starts:
        res = minimize(
            _factorization_objective,
            x0,
            args=(phi,),
            method="Nelder-Mead",
            options={"maxiter": 4000, "xatol": 1e-10, "fatol": 1e-12},
        )
        if res.fun < best:
            best = res.fun
    return best


def legendre_explicit(n, x):
    """P_n(x) from the closed-form polynomials, n <= 5 only."""
    forms = {
        0: lambda t: 1.0,
        1: lambda t: t,
        2: lambda t: (3 * t * t - 1) / 2,
        3: lambda t: (5 * t**3 - 3 * t) / 2,
        4: lambda t: (35 * t**4 - 30 * t * t + 3) / 8,
        5: lambda t: (63 * t**5 - 70 * t**3 + 15 * t) / 8,
    }
    return forms[n](x)


def legendre_zero_closed_form(n):
    """P_n(0): zero for odd n, (-1)^k (2k)!/(2^{2k} k!^2) for n = 2k."""
    if n % 2 == 1:
        return 0.0
    k = n // 2
    with mpmath.workdps(40):
        val = (-1) ** k * mpmath.factorial(2 * k) / (
            mpmath.power(2, 2 * k) * mpmath.factorial(k) ** 2
        )
        return float(val)


def diagonal_sign_average(A):
    """Average of U A U* over all diagonal +-1 unitaries, n <= 12.

    Equals diag(A) exactly, which makes the diagonal-projection Schur
    multiplier an average of isometries, hence a contraction on every
    Schatten class.
    """
    n = A.shape[0]
    acc = np.zeros_like(A, dtype=complex)
    for signs in itertools.product((1.0, -1.0), repeat=n):
        d = np.array(signs)
        acc += (d[:, None] * A) * d[None, :]
    return acc / 2**n


def tk_entry_bruteforce(q, m, n, k, row, col):
    """T_k entry from the defining constraint, by direct arithmetic.

    row encodes (a_1..a_n, b), col encodes (x_1..x_n, y), each digit in
    base q^m with the last coordinate (b resp. y) least significant.
    """
    Q = q**m
    digs_r = []
    t = row
    for _ in range(n + 1):
        digs_r.append(t % Q)
        t //= Q
    b = digs_r[0]
    a = digs_r[1:][::-1]
    digs_c = []
    t = col
    for _ in range(n + 1):
        digs_c.append(t % Q)
        t //= Q
    y = digs_c[0]
    x = digs_c[1:][::-1]
    shift = 0 if k == m else q**k
    target = (sum(ai * xi for ai, xi in zip(a, x)) + b + shift) % Q
    return q ** (-m * n) if y == target else 0.0
