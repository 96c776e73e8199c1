"""Factorization (gamma_2) norm of a symbol via semidefinite programming.

The factorization norm of phi is the infimum of
max_i ||f_i|| * max_j ||g_j|| over Hilbert-space factorizations
phi_ij = <f_i, g_j>; it equals the Schur-multiplier norm on the
operator ideal at p = inf (and by duality at p = 1).  It is the optimal
value of

    minimize t  subject to  [[T1, phi], [phi*, T2]] >= 0,
    diag(T1) <= t, diag(T2) <= t,

and a Gram-vector factorization of the optimal block matrix yields
vectors of dimension at most 2n.
"""

from dataclasses import dataclass

import numpy as np

from .schatten import check_symbol

SOLVER_MAX_ITER = 100_000


@dataclass
class FactorizationResult:
    """Outcome of the factorization-norm solve.

    value is a certified upper bound on the norm: the solver's block
    matrix is floored to exact positive semidefiniteness and the
    off-diagonal mismatch is absorbed into the diagonal by a
    diagonal-dominance correction, so value >= true norm always holds.
    lower is the solver objective (accurate to the solver's duality
    gap, but not independently certified).  converged False means the
    solver stopped early; value and lower still bracket the norm, just
    more loosely.  factors_left/right are rows f_i, g_j with
    <f_i, g_j> ~ phi_ij realizing value up to the same slack.
    """

    value: float
    lower: float
    converged: bool
    factors_left: np.ndarray
    factors_right: np.ndarray

    @property
    def width(self):
        return self.value - self.lower


def _solve_sdp(phi):
    import cvxpy as cp

    n, m = phi.shape
    t = cp.Variable()
    Z = cp.Variable((n + m, n + m), hermitian=True)
    constraints = [
        Z >> 0,
        Z[:n, n:] == phi,
        cp.diag(cp.real(Z)) <= t,
    ]
    prob = cp.Problem(cp.Minimize(t), constraints)
    try:
        prob.solve(solver=cp.CLARABEL, max_iter=SOLVER_MAX_ITER)
    except (cp.error.SolverError, ValueError):
        prob.solve(solver=cp.CVXOPT)
    if Z.value is None:
        raise RuntimeError(f"factorization SDP failed: status {prob.status}")
    return float(prob.value), np.asarray(Z.value), prob.status


def factorization_norm(phi):
    """Factorization norm of a square symbol, as a certified sandwich.

    Args:
        phi: square complex matrix.

    Returns:
        FactorizationResult; value - lower is the certification width,
        normally ~1e-8.
    """
    phi = check_symbol(phi)
    n = phi.shape[0]
    obj, Z, status = _solve_sdp(phi)

    # Floor to exact PSD.  The corner then differs from phi by delta;
    # [[D1, -delta], [-delta*, D2]] with D1, D2 the absolute row/column
    # sums of delta is diagonally dominant Hermitian, hence PSD, so
    # adding the sums to the diagonal certifies feasibility for phi.
    H = (Z + Z.conj().T) / 2.0
    w, V = np.linalg.eigh(H)
    Zp = (V * np.clip(w, 0.0, None)[None, :]) @ V.conj().T
    delta = Zp[:n, n:] - phi
    slack = float(
        max(np.abs(delta).sum(axis=1).max(), np.abs(delta).sum(axis=0).max())
    )
    value = float(np.diag(Zp).real.max()) + slack

    # Gram factors of dimension 2n; right factors re-solved so the
    # inner products match phi exactly whenever F has full row rank.
    jitter = 1e-14 * max(1.0, float(np.abs(Zp).max()))
    W = np.linalg.cholesky(Zp + jitter * np.eye(2 * n))
    F = W[:n, :]
    G = np.linalg.lstsq(F, phi, rcond=None)[0].conj().T

    converged = status in ("optimal", "optimal_inaccurate") and value - obj < 1e-6
    return FactorizationResult(
        value=value,
        lower=min(obj, value),
        converged=converged,
        factors_left=F,
        factors_right=G,
    )
