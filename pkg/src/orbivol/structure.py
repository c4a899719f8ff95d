"""Structure constants, adjoint matrices and their consistency checks.

Every bracket of basis matrices is computed with the matrix oracle
(commutator of the concrete realizations) and expanded back in the
basis; the resulting sparse tensor is the single source of truth for
all downstream metric and curvature computations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import BracketTable, bracket_batch
from .basis import ClosureError, LieAlgebraModel
from .quaternion import DimensionError, mat_bracket

EXPANSION_TOL = 1e-10
COEFF_CLEAN_TOL = 1e-12


@dataclass
class StructureTensor:
    """[e_i, e_j] = sum_k coeff * e_k, stored sparsely per ordered pair."""

    dim: int
    entries: dict  # (i, j) -> tuple of (k, coeff)

    def pair(self, i: int, j: int):
        return self.entries.get((i, j), ())

    def bracket_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return bracket_batch(self.table, np.asarray(x)[None, :],
                             np.asarray(y)[None, :])[0]

    @property
    def table(self) -> BracketTable:
        if not hasattr(self, "_table"):
            rows = [(i, j, k, c)
                    for (i, j), terms in self.entries.items()
                    for k, c in terms]
            self._table = BracketTable.from_entries(self.dim, rows)
        return self._table

    def dense(self) -> np.ndarray:
        """Dense (dim, dim, dim) tensor C[i, j, k]."""
        out = np.zeros((self.dim,) * 3)
        for (i, j), terms in self.entries.items():
            for k, c in terms:
                out[i, j, k] = c
        return out


def structure_constants(model: LieAlgebraModel,
                        tol: float = EXPANSION_TOL) -> StructureTensor:
    """Expand every basis bracket through the matrix oracle.

    Raises ClosureError when a bracket does not lie in the basis span,
    which would mean the basis construction is broken.
    """
    if model._structure is not None:
        return model._structure
    entries: dict = {}
    mats = model.matrices()
    for i in range(model.dim):
        for j in range(i + 1, model.dim):
            br = mat_bracket(mats[i], mats[j])
            if br.max_abs() <= COEFF_CLEAN_TOL:
                continue
            coords = model.coordinates_of(br, tol=tol)
            terms = tuple((k, float(c)) for k, c in enumerate(coords)
                          if abs(c) > COEFF_CLEAN_TOL)
            if terms:
                entries[(i, j)] = terms
                entries[(j, i)] = tuple((k, -c) for k, c in terms)
    tensor = StructureTensor(model.dim, entries)
    model._structure = tensor
    return tensor


def ad_matrix(model: LieAlgebraModel, coords: np.ndarray) -> np.ndarray:
    """Matrix of ad(X) in basis coordinates, X given by ``coords``.

    Column j holds the coordinates of [X, e_j].
    """
    coords = np.asarray(coords, dtype=np.float64)
    if coords.shape != (model.dim,):
        raise DimensionError(f"expected {model.dim} coordinates, got {coords.shape}")
    tensor = structure_constants(model)
    out = np.zeros((model.dim, model.dim))
    table = tensor.table
    # out[k, j] = sum_i coords[i] * C[i, j, k]
    np.add.at(out, (table.k_idx, table.j_idx), coords[table.i_idx] * table.coeff)
    return out


def basis_ad_matrices(model: LieAlgebraModel) -> np.ndarray:
    """Stack of ad(e_i) matrices, shape (dim, dim, dim)."""
    if not hasattr(model, "_ad_stack"):
        eye = np.eye(model.dim)
        model._ad_stack = np.stack([ad_matrix(model, eye[i])
                                    for i in range(model.dim)])
    return model._ad_stack


def verify_cartan_relations(model: LieAlgebraModel) -> bool:
    """Check the grading [k,k] in k, [k,p] in p, [p,p] in k."""
    tensor = structure_constants(model)
    return cartan_grading_holds(tensor, model.part)


def cartan_grading_holds(tensor: StructureTensor, part: np.ndarray) -> bool:
    for (i, j), terms in tensor.entries.items():
        target_is_k = part[i] == part[j]
        for k, _ in terms:
            if part[k] != target_is_k:
                return False
    return True


def jacobi_residual(model: LieAlgebraModel) -> float:
    """Max residual of the Jacobi identity over all coordinate triples.

    Vectorized through the dense tensor: for D[i,j,k,:] = [[e_i,e_j],e_k],
    the cyclic sum over (i, j, k) must vanish.
    """
    c = structure_constants(model).dense()
    d = np.einsum("ijm,mkl->ijkl", c, c)
    cyc = d + d.transpose(1, 2, 0, 3) + d.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(cyc)))


def max_expansion_residual(model: LieAlgebraModel) -> float:
    """Worst reconstruction error of basis brackets from the tensor."""
    tensor = structure_constants(model)
    mats = model.matrices()
    worst = 0.0
    for i in range(model.dim):
        for j in range(i + 1, model.dim):
            br = mat_bracket(mats[i], mats[j])
            coords = np.zeros(model.dim)
            for k, coeff in tensor.pair(i, j):
                coords[k] = coeff
            worst = max(worst, (br - model.assemble(coords)).max_abs())
    return worst
