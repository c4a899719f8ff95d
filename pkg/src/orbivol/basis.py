"""Ordered bases of so(n,1), su(n,1) and sp(n,1) with Cartan tags.

The quaternionic basis follows the standard construction: for the
maximal compact part, the antisymmetric/symmetric off-diagonal pairs
with imaginary coefficients, then sqrt(2)-normalized imaginary diagonal
elements; for the complement, the symmetric and imaginary antisymmetric
elements of the last column.  Ordering is compact block first, so the
Killing form is a signed multiple of the identity in coordinates.

The real basis keeps only the real antisymmetric generators; the
complex one keeps the i-coefficient generators plus a trace-free
orthogonalized imaginary diagonal block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quaternion import (
    IMAGINARY_UNITS,
    DomainError,
    GroundField,
    Quaternion,
    QuaternionMatrix,
    alpha,
    beta,
    elem,
    is_in_lie_algebra,
    trace_pairing,
)

SQRT2 = float(np.sqrt(2.0))

UNIT_NAMES = {1: "i", 2: "j", 3: "k"}


@dataclass(frozen=True)
class BasisElement:
    index: int
    kind: tuple
    part: str  # "K" or "P"
    matrix: QuaternionMatrix
    label: str


@dataclass
class LieAlgebraModel:
    field: GroundField
    n: int
    basis: list[BasisElement]
    dim: int = field(init=False)
    part: np.ndarray = field(init=False)  # bool, True on the compact part

    def __post_init__(self):
        self.dim = len(self.basis)
        self.part = np.array([b.part == "K" for b in self.basis])
        self._structure = None
        self._metric = None

    @property
    def k_indices(self) -> np.ndarray:
        return np.nonzero(self.part)[0]

    @property
    def p_indices(self) -> np.ndarray:
        return np.nonzero(~self.part)[0]

    @property
    def matrix_size(self) -> int:
        return self.n + 1

    def matrices(self) -> list[QuaternionMatrix]:
        return [b.matrix for b in self.basis]

    def assemble(self, coords: np.ndarray) -> QuaternionMatrix:
        """Matrix realization of a coordinate vector."""
        coords = np.asarray(coords, dtype=np.float64)
        if coords.shape != (self.dim,):
            raise DomainError(f"expected {self.dim} coordinates, got {coords.shape}")
        data = np.zeros((self.matrix_size, self.matrix_size, 4))
        for c, b in zip(coords, self.basis):
            if c != 0.0:
                data += c * b.matrix.data
        return QuaternionMatrix(data)

    def coordinates_of(self, m: QuaternionMatrix, tol: float | None = None):
        """Expand a matrix in the basis via the trace pairing.

        The basis is orthogonal with Re trace(e e*) = 2 for every
        element, so the expansion is a plain projection.  When ``tol``
        is given, raises if the residual exceeds it.
        """
        coords = np.array([trace_pairing(m, b.matrix) for b in self.basis]) / 2.0
        if tol is not None:
            residual = (m - self.assemble(coords)).max_abs()
            if residual > tol:
                raise ClosureError(
                    f"matrix is not in the span of the basis "
                    f"(residual {residual:.3e} > {tol:.1e})")
        return coords


class ClosureError(ArithmeticError):
    """A bracket failed to expand in the basis; signals a basis bug."""


def expected_dim(field: GroundField, n: int) -> int:
    if field is GroundField.QUATERNION:
        return 2 * n * n + 5 * n + 3
    if field is GroundField.COMPLEX:
        return n * n + 2 * n
    return n * (n + 1) // 2


def _su_diagonal_block(n: int) -> list[QuaternionMatrix]:
    """Trace-free imaginary diagonal elements, orthogonalized and scaled.

    Gram-Schmidt on i*e_11, ..., i*e_{n+1,n+1} against the trace
    constraint; on this block the Killing form is a constant multiple of
    the trace pairing, so orthogonalizing under the latter is the same.
    Each element is scaled to Re trace(e e*) = 2, matching the rest of
    the basis.
    """
    size = n + 1
    out = []
    for m in range(1, size):
        v = np.zeros(size)
        v[:m] = 1.0
        v[m] = -m
        v *= SQRT2 / np.linalg.norm(v)
        mat = QuaternionMatrix.zeros(size)
        for a in range(size):
            mat.data[a, a, 1] = v[a]
        out.append(mat)
    return out


def build_basis(field: GroundField, n: int) -> LieAlgebraModel:
    """Ordered standard basis for the chosen field and rank.

    Compact part first (off-diagonal block, then diagonal block), then
    the noncompact complement, so coordinate index ranges line up with
    the closed-form Killing signature.
    """
    if n < 1:
        raise DomainError(f"rank must be >= 1, got {n}")
    size = n + 1
    elems: list[BasisElement] = []

    def add(kind, part, matrix, label):
        elems.append(BasisElement(len(elems), kind, part, matrix, label))

    if field is GroundField.QUATERNION:
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                add(("alpha", j, k), "K", alpha(size, j, k), f"alpha_{j}{k}")
                for t in (1, 2, 3):
                    add(("im_beta", t, j, k), "K",
                        beta(size, j, k).scale(IMAGINARY_UNITS[t]),
                        f"{UNIT_NAMES[t]}*beta_{j}{k}")
        for i in range(1, size + 1):
            for t in (1, 2, 3):
                add(("im_diag", t, i), "K",
                    elem(size, i, i, IMAGINARY_UNITS[t]).scale(SQRT2),
                    f"sqrt2*{UNIT_NAMES[t]}*e_{i}{i}")
        for j in range(1, n + 1):
            add(("beta_p", j), "P", beta(size, j, size), f"beta_{j},{size}")
            for t in (1, 2, 3):
                add(("im_alpha_p", t, j), "P",
                    alpha(size, j, size).scale(IMAGINARY_UNITS[t]),
                    f"{UNIT_NAMES[t]}*alpha_{j},{size}")
    elif field is GroundField.COMPLEX:
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                add(("alpha", j, k), "K", alpha(size, j, k), f"alpha_{j}{k}")
                add(("im_beta", 1, j, k), "K",
                    beta(size, j, k).scale(IMAGINARY_UNITS[1]), f"i*beta_{j}{k}")
        for m, mat in enumerate(_su_diagonal_block(n), start=1):
            add(("su_diag", m), "K", mat, f"i*diag_{m}")
        for j in range(1, n + 1):
            add(("beta_p", j), "P", beta(size, j, size), f"beta_{j},{size}")
            add(("im_alpha_p", 1, j), "P",
                alpha(size, j, size).scale(IMAGINARY_UNITS[1]),
                f"i*alpha_{j},{size}")
    else:
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                add(("alpha", j, k), "K", alpha(size, j, k), f"alpha_{j}{k}")
        for j in range(1, n + 1):
            add(("beta_p", j), "P", beta(size, j, size), f"beta_{j},{size}")

    model = LieAlgebraModel(field, n, elems)
    if model.dim != expected_dim(field, n):
        raise ClosureError(
            f"basis for {field.value}, n={n} has {model.dim} elements, "
            f"expected {expected_dim(field, n)}")
    for b in elems:
        if not is_in_lie_algebra(b.matrix, field, n):
            raise ClosureError(f"basis element {b.label} fails the algebra "
                               f"membership check")
    return model


def count_by_kind(model: LieAlgebraModel) -> dict:
    counts: dict = {}
    for b in model.basis:
        counts[b.kind[0]] = counts.get(b.kind[0], 0) + 1
    return counts
