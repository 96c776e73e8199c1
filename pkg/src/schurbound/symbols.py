"""Symbol constructions: amplification, conditional-expectation block
averaging, and sampling a group function along row/column elements."""

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .schatten import check_symbol


def amplify_symbol(phi, n):
    """The mn x mn symbol phi~((x,i),(y,j)) = phi(x,y).

    Entrywise constant on n x n blocks; Schur multiplication by the
    amplified symbol acts as M_phi tensor id, so every multiplier-norm
    lower bound for phi transports to the amplification by restricting
    witnesses to one block.

    Args:
        phi: square m x m symbol.
        n: amplification factor >= 1.

    Returns:
        mn x mn complex ndarray.
    """
    phi = check_symbol(phi)
    n = int(n)
    if n < 1:
        raise InputError(f"amplification factor must be >= 1, got {n}")
    return np.kron(phi, np.ones((n, n), dtype=complex))


@dataclass
class Partition:
    """Assignment of indices {0..n-1} to blocks, with a positive weight
    (atom measure) per index."""

    blocks: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        self.blocks = np.asarray(self.blocks, dtype=int)
        if self.blocks.ndim != 1 or self.blocks.size == 0:
            raise InputError("partition needs a 1-d nonempty block assignment")
        if self.weights is None:
            self.weights = np.ones(self.blocks.size, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.weights.shape != self.blocks.shape or np.any(self.weights <= 0):
            raise InputError("weights must be positive, one per index")

    @property
    def size(self):
        return self.blocks.size

    def block_ids(self):
        return np.unique(self.blocks)


def block_average(phi, partition):
    """Conditional expectation of phi onto the block sigma-algebra.

    psi_ij = weighted mean of phi over block(i) x block(j); psi has the
    same shape as phi and is constant on blocks.  With respect to the
    weighted measure this is E[phi | A tensor A], a contraction of the
    multiplier norm when blocks have equal measure.

    Args:
        phi: square n x n symbol.
        partition: Partition covering phi's index set.

    Returns:
        n x n complex ndarray.
    """
    phi = check_symbol(phi)
    if partition.size != phi.shape[0]:
        raise InputError(
            f"partition covers {partition.size} indices, symbol has {phi.shape[0]}"
        )
    w = partition.weights
    out = np.empty_like(phi)
    for bi in partition.block_ids():
        I = partition.blocks == bi
        wi = w[I]
        for bj in partition.block_ids():
            J = partition.blocks == bj
            wj = w[J]
            mass = wi.sum() * wj.sum()
            mean = (wi[:, None] * phi[np.ix_(I, J)] * wj[None, :]).sum() / mass
            out[np.ix_(I, J)] = mean
    return out


def sample_symbol(f, rows, cols, mult):
    """Matrix (f(rows[i] * cols[j]))_ij for a function f on a group.

    For any matrix A, the entrywise product of this symbol with A has
    Schatten p-norm at most ||f-check||_{MS^p} ||A||_p, where f-check is
    the two-variable symbol of f on the group; that inequality is what
    downstream certificates rest on.

    Args:
        f: callable on group elements (products of a row and a column
            element); must be defined on every required product.
        rows: list of pairwise-distinct group elements.
        cols: list of pairwise-distinct group elements.
        mult: group multiplication callback (row_elt, col_elt) -> elt.

    Returns:
        len(rows) x len(cols) complex ndarray.
    """
    out = np.empty((len(rows), len(cols)), dtype=complex)
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            try:
                val = f(mult(r, c))
            except KeyError as exc:
                raise InputError(f"f undefined on product of {r!r} and {c!r}") from exc
            if val is None:
                raise InputError(f"f undefined on product of {r!r} and {c!r}")
            out[i, j] = val
    return out
