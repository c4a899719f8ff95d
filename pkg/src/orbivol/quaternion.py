"""Quaternion scalars and square matrices over R, C and H.

A quaternion q = w + x*i + y*j + z*k is stored as four floats; a matrix
over H is a float64 array of shape (rows, cols, 4) with the component
axis last.  Real and complex matrices are the sub-cases with the (y, z)
or (x, y, z) components identically zero, so a single multiplication
routine serves all three ground fields.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._kernels import quat_matmul

# component order along the last axis
W, X, Y, Z = 0, 1, 2, 3


class GroundField(enum.Enum):
    REAL = "r"
    COMPLEX = "c"
    QUATERNION = "h"

    @classmethod
    def parse(cls, label: str) -> "GroundField":
        table = {
            "r": cls.REAL, "real": cls.REAL,
            "c": cls.COMPLEX, "complex": cls.COMPLEX,
            "h": cls.QUATERNION, "quaternion": cls.QUATERNION,
            "quaternionic": cls.QUATERNION,
        }
        key = label.strip().lower()
        if key not in table:
            raise DomainError(f"unknown ground field {label!r}")
        return table[key]


class DomainError(ValueError):
    """Input outside an operation's domain."""


class DimensionError(ValueError):
    """Shape mismatch between operands."""


@dataclass(frozen=True)
class Quaternion:
    """Immutable quaternion with Hamilton multiplication."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    UNITS = ("1", "i", "j", "k")

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        return Quaternion(self.w * other, self.x * other,
                          self.y * other, self.z * other)

    __rmul__ = __mul__

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return float(np.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.as_array() - other.as_array())) <= tol)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)

# imaginary units I_1 = i, I_2 = j, I_3 = k, indexed 1-based
IMAGINARY_UNITS = {1: I, 2: J, 3: K}


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ab."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


class QuaternionMatrix:
    """Matrix over H backed by a (rows, cols, 4) float64 array."""

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        data = np.asarray(data, dtype=np.float64)
        if data.ndim != 3 or data.shape[2] != 4:
            raise DimensionError(f"expected (rows, cols, 4) array, got {data.shape}")
        self.data = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "QuaternionMatrix":
        if n_cols is None:
            n_cols = n_rows
        return cls(np.zeros((n_rows, n_cols, 4)))

    @classmethod
    def identity(cls, n: int) -> "QuaternionMatrix":
        m = cls.zeros(n)
        m.data[np.arange(n), np.arange(n), W] = 1.0
        return m

    @classmethod
    def unit(cls, n: int, row: int, col: int, value: Quaternion = ONE) -> "QuaternionMatrix":
        """n x n matrix with a single quaternion entry (0-based indices)."""
        m = cls.zeros(n)
        m.data[row, col] = value.as_array()
        return m

    # -- basic properties ---------------------------------------------

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    @property
    def n_cols(self) -> int:
        return self.data.shape[1]

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, rc) -> Quaternion:
        w, x, y, z = self.data[rc[0], rc[1]]
        return Quaternion(float(w), float(x), float(y), float(z))

    def copy(self) -> "QuaternionMatrix":
        return QuaternionMatrix(self.data.copy())

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.data + other.data)

    def __sub__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.data - other.data)

    def __neg__(self) -> "QuaternionMatrix":
        return QuaternionMatrix(-self.data)

    def scale(self, q: Quaternion | float) -> "QuaternionMatrix":
        """Left multiplication by a scalar quaternion."""
        if not isinstance(q, Quaternion):
            return QuaternionMatrix(self.data * float(q))
        out = np.empty_like(self.data)
        a, b, c, d = q.w, q.x, q.y, q.z
        w, x, y, z = (self.data[..., W], self.data[..., X],
                      self.data[..., Y], self.data[..., Z])
        out[..., W] = a * w - b * x - c * y - d * z
        out[..., X] = a * x + b * w + c * z - d * y
        out[..., Y] = a * y - b * z + c * w + d * x
        out[..., Z] = a * z + b * y - c * x + d * w
        return QuaternionMatrix(out)

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        if self.n_cols != other.n_rows:
            raise DimensionError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by "
                f"{other.n_rows}x{other.n_cols}")
        return QuaternionMatrix(quat_matmul(self.data, other.data))

    def conj_transpose(self) -> "QuaternionMatrix":
        out = np.transpose(self.data, (1, 0, 2)).copy()
        out[..., 1:] *= -1.0
        return QuaternionMatrix(out)

    def re_trace(self) -> float:
        """Real part of the trace."""
        n = min(self.n_rows, self.n_cols)
        return float(self.data[np.arange(n), np.arange(n), W].sum())

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def isclose(self, other: "QuaternionMatrix", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self) -> str:
        return f"QuaternionMatrix({self.n_rows}x{self.n_cols})"


def mat_bracket(a: QuaternionMatrix, b: QuaternionMatrix) -> QuaternionMatrix:
    """Commutator ab - ba of two square matrices of equal size."""
    if not (a.is_square() and b.is_square() and a.n_rows == b.n_rows):
        raise DimensionError(
            f"bracket needs equal square matrices, got "
            f"{a.n_rows}x{a.n_cols} and {b.n_rows}x{b.n_cols}")
    return a @ b - b @ a


def trace_pairing(a: QuaternionMatrix, b: QuaternionMatrix) -> float:
    """Re trace(a b*), the Euclidean pairing on matrix space."""
    return float(np.sum(a.data * b.data))


def signature_matrix(n: int) -> QuaternionMatrix:
    """diag(1, ..., 1, -1) of size (n+1) defining the indefinite Hermitian form."""
    m = QuaternionMatrix.identity(n + 1)
    m.data[n, n, W] = -1.0
    return m


def is_in_sp_lie_algebra(x: QuaternionMatrix, n: int, tol: float = 1e-12) -> bool:
    """True iff J x* J = -x for J = diag(I_n, -1), i.e. x is in sp(n,1)."""
    if x.n_rows != n + 1 or x.n_cols != n + 1:
        raise DimensionError(f"expected ({n + 1})x({n + 1}) matrix, got "
                             f"{x.n_rows}x{x.n_cols}")
    j = signature_matrix(n)
    lhs = j @ x.conj_transpose() @ j
    return lhs.isclose(-x, tol=tol)


def is_in_lie_algebra(x: QuaternionMatrix, field: GroundField, n: int,
                      tol: float = 1e-12) -> bool:
    """Membership test for so(n,1), su(n,1) or sp(n,1).

    All three satisfy J x* J = -x; the real case additionally requires
    real entries, the complex case complex entries and zero trace.
    """
    if not is_in_sp_lie_algebra(x, n, tol=tol):
        return False
    if field is GroundField.REAL:
        return float(np.max(np.abs(x.data[..., 1:]))) <= tol
    if field is GroundField.COMPLEX:
        if float(np.max(np.abs(x.data[..., 2:]))) > tol:
            return False
        trace = x.data[np.arange(n + 1), np.arange(n + 1), :].sum(axis=0)
        return float(np.max(np.abs(trace))) <= tol
    return True


# -- elementary generator matrices (1-based indices, as is conventional
#    for this construction) -------------------------------------------

def elem(size: int, j: int, k: int, value: Quaternion = ONE) -> QuaternionMatrix:
    """Matrix unit with ``value`` in the (j, k) position, 1-based."""
    return QuaternionMatrix.unit(size, j - 1, k - 1, value)


def alpha(size: int, j: int, k: int) -> QuaternionMatrix:
    """e_jk - e_kj (antisymmetric pair); zero when j == k."""
    if j == k:
        return QuaternionMatrix.zeros(size)
    return elem(size, j, k) - elem(size, k, j)


def beta(size: int, j: int, k: int) -> QuaternionMatrix:
    """e_jk + e_kj (symmetric pair); equals 2 e_jj when j == k."""
    return elem(size, j, k) + elem(size, k, j)
