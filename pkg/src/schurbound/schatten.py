"""Schatten norms, trace pairings, and entrywise (Schur) multiplication.

Matrices are dense complex numpy arrays.  Exponents are floats in
[1, inf], with math.inf for the operator norm.  Index sets may carry
positive weights (a finite measure); weights enter norms and pairings by
conjugation with diag(sqrt(w)).
"""

import math

import numpy as np

from .errors import InputError

INF = math.inf


def as_matrix(A):
    """Validate and return a 2-d complex128 array with finite entries."""
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise InputError(f"expected a nonempty 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InputError("matrix has non-finite entries")
    return M


def check_exponent(p):
    """Validate a Schatten exponent, returning it as a float (inf allowed)."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise InputError(f"Schatten exponent must be in [1, inf], got {p}")
    return p


def conjugate_exponent(p):
    """p' with 1/p + 1/p' = 1; conjugate(1) = inf and conjugate(inf) = 1."""
    p = check_exponent(p)
    if p == INF:
        return 1.0
    if p == 1.0:
        return INF
    return p / (p - 1.0)


def _apply_weights(A, wx, wy):
    # conjugation by diag(sqrt(w)) on each side; weights must be positive
    if wx is not None:
        wx = np.asarray(wx, dtype=float)
        if wx.shape != (A.shape[0],) or np.any(wx <= 0):
            raise InputError("row weights must be positive, one per row")
        A = np.sqrt(wx)[:, None] * A
    if wy is not None:
        wy = np.asarray(wy, dtype=float)
        if wy.shape != (A.shape[1],) or np.any(wy <= 0):
            raise InputError("column weights must be positive, one per column")
        A = A * np.sqrt(wy)[None, :]
    return A


def singular_values(A):
    """Singular values of A, descending."""
    return np.linalg.svd(as_matrix(A), compute_uv=False)


def schatten_norm(A, p, wx=None, wy=None):
    """Schatten p-norm (sum of sigma_k^p)^(1/p); operator norm at p = inf.

    Args:
        A: complex matrix.
        p: exponent in [1, inf].
        wx, wy: optional positive index weights; the norm is taken of
            diag(sqrt(wx)) A diag(sqrt(wy)).

    Returns:
        Nonnegative float; 0 for the zero matrix.
    """
    p = check_exponent(p)
    sv = np.linalg.svd(_apply_weights(as_matrix(A), wx, wy), compute_uv=False)
    if p == INF:
        return float(sv[0]) if sv.size else 0.0
    if p == 2.0:
        return float(np.sqrt(np.sum(sv * sv)))
    if p == 1.0:
        return float(np.sum(sv))
    # scale out the top singular value so large p does not overflow
    top = float(sv[0])
    if top == 0.0:
        return 0.0
    return top * float(np.sum((sv / top) ** p)) ** (1.0 / p)


def trace_pairing(A, B, wx=None, wy=None):
    """Tr(AB), optionally against weighted counting measures.

    A is m x n and B is n x m; with weights the value is
    sum_{x,y} wx[x] wy[y] A[x, y] B[y, x].

    Returns:
        Complex number.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[0] or A.shape[0] != B.shape[1]:
        raise InputError(f"pairing shape mismatch: {A.shape} vs {B.shape}")
    W = A * B.T
    if wx is not None:
        W = np.asarray(wx, dtype=float)[:, None] * W
    if wy is not None:
        W = W * np.asarray(wy, dtype=float)[None, :]
    return complex(W.sum())


def schur_apply(phi, A):
    """Entrywise product (phi_ij A_ij), the Schur multiplier action."""
    phi = as_matrix(phi)
    A = as_matrix(A)
    if phi.shape != A.shape:
        raise InputError(f"symbol shape {phi.shape} != matrix shape {A.shape}")
    return phi * A


def check_symbol(phi):
    """Validate a symbol: a square finite complex matrix."""
    phi = as_matrix(phi)
    if phi.shape[0] != phi.shape[1]:
        raise InputError(f"symbol must be square, got shape {phi.shape}")
    return phi


def polar_witness(C, p):
    """Unit-p-norm maximizer of the entrywise pairing against C.

    Returns A with ||A||_p = 1 attaining
    sum_ij A_ij C_ij = max over the unit ball = ||C||_{p'}.
    In the singular frame C = U diag(s) Vh, A = conj(U) diag(f) conj(Vh)
    with f = s^{p'-1} normalized to unit p-norm for finite p > 1, f = 1
    at p = inf (value: trace norm), and the top singular pair at p = 1.

    Args:
        C: complex matrix, not identically zero.
        p: exponent of the witness norm constraint, in [1, inf].

    Returns:
        (A, value) with value = ||C||_{p'}, p' the conjugate exponent.
    """
    p = check_exponent(p)
    pc = conjugate_exponent(p)
    if p == 2.0:
        # self-dual case, no SVD needed
        fro = float(np.linalg.norm(C))
        if fro == 0.0:
            raise InputError("polar witness of the zero matrix is undefined")
        return np.conj(C) / fro, fro
    U, s, Vh = np.linalg.svd(as_matrix(C))
    if s[0] <= 0.0:
        raise InputError("polar witness of the zero matrix is undefined")
    if p == INF:
        # witness is a partial isometry; value = trace norm of C
        f = np.ones_like(s)
        value = float(np.sum(s))
    elif p == 1.0:
        f = np.zeros_like(s)
        f[0] = 1.0
        value = float(s[0])
    else:
        t = s / s[0]
        denom = float(np.sum(t**pc)) ** (1.0 / pc)
        # ||t^{pc-1}||_p = ||t||_{pc}^{pc/p}, so this f has unit p-norm
        f = t ** (pc - 1.0) / denom ** (pc / p)
        value = float(s[0]) * denom
    k = s.shape[0]
    A = (U[:, :k].conj() * f[None, :]) @ Vh.conj()
    return A, value
