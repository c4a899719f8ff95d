"""Pure numpy implementations of the hot kernels."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse


def quat_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of quaternion matrices stored as (r, k, 4) float64 arrays.

    The Hamilton product distributes over the contraction, so the result
    components are sums of ordinary real matrix products.
    """
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty((a.shape[0], b.shape[1], 4))
    out[..., 0] = aw @ bw - ax @ bx - ay @ by - az @ bz
    out[..., 1] = aw @ bx + ax @ bw + ay @ bz - az @ by
    out[..., 2] = aw @ by - ax @ bz + ay @ bw + az @ bx
    out[..., 3] = aw @ bz + ax @ by - ay @ bx + az @ bw
    return out


@dataclass
class BracketTable:
    """Sparse structure-constant tensor in COO form.

    [e_i, e_j] = sum_k coeff * e_k, one row per nonzero (i, j, k, coeff),
    covering all ordered pairs (antisymmetric completion included).
    """

    dim: int
    i_idx: np.ndarray  # int32 (nnz,)
    j_idx: np.ndarray
    k_idx: np.ndarray
    coeff: np.ndarray  # float64 (nnz,)
    _scatter: sparse.csr_matrix | None = field(default=None, repr=False)

    @classmethod
    def from_entries(cls, dim: int, entries) -> "BracketTable":
        if entries:
            i, j, k, c = map(np.asarray, zip(*entries))
        else:
            i = j = k = np.zeros(0)
            c = np.zeros(0)
        return cls(dim,
                   i.astype(np.int32), j.astype(np.int32),
                   k.astype(np.int32), c.astype(np.float64))

    @property
    def nnz(self) -> int:
        return self.coeff.size

    def scatter(self) -> sparse.csr_matrix:
        """(nnz, dim) map sending per-entry products to their k columns."""
        if self._scatter is None:
            self._scatter = sparse.csr_matrix(
                (self.coeff, (np.arange(self.nnz), self.k_idx)),
                shape=(self.nnz, self.dim))
        return self._scatter


_CHUNK = 512


def bracket_batch(table: BracketTable, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Batched bracket: rows of x, y are coordinate vectors; returns [x, y] rows.

    Per stored entry the contribution is coeff * x[:, i] * y[:, j] into
    column k; the scatter is one sparse matmul.  Batches are chunked so
    the (chunk, nnz) intermediate stays small.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    n = x.shape[0]
    out = np.empty((n, table.dim))
    if table.nnz == 0:
        out[:] = 0.0
        return out
    scatter = table.scatter()
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        prod = x[lo:hi, table.i_idx] * y[lo:hi, table.j_idx]
        out[lo:hi] = prod @ scatter
    return out
