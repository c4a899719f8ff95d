"""Killing form, canonical and scaled inner products, and the bracket
operator-norm constants.

The canonical inner product flips the sign of the Killing form on the
compact part; in basis coordinates it is a positive multiple of the
identity, so norms and operator norms reduce to plain Euclidean ones up
to a single scalar.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import LieAlgebraModel
from .quaternion import DimensionError, DomainError, GroundField
from .structure import ad_matrix, basis_ad_matrices, structure_constants


@dataclass
class MetricModel:
    algebra: LieAlgebraModel
    killing_diag: np.ndarray
    canonical_scale: float      # uniform |B(e_i, e_i)|
    metric_scale: float         # scaled metric multiplier
    signature: np.ndarray       # -1 on the compact part, +1 on the complement

    @property
    def scalar(self) -> float:
        """The scaled inner-product matrix is scalar * identity."""
        return self.canonical_scale * self.metric_scale

    def inner(self, x: np.ndarray, y: np.ndarray, scaled: bool = True) -> float:
        x, y = self._check(x), self._check(y)
        s = self.scalar if scaled else self.canonical_scale
        return float(s * (x @ y))

    def norm(self, x: np.ndarray, scaled: bool = True) -> float:
        return float(np.sqrt(max(self.inner(x, x, scaled=scaled), 0.0)))

    def norm_sq_batch(self, rows: np.ndarray) -> np.ndarray:
        return self.scalar * np.einsum("bi,bi->b", rows, rows)

    def _check(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.algebra.dim,):
            raise DimensionError(
                f"expected {self.algebra.dim} coordinates, got {v.shape}")
        return v


def killing_form(model: LieAlgebraModel, x: np.ndarray, y: np.ndarray) -> float:
    """B(X, Y) = trace(ad X ad Y)."""
    return float(np.trace(ad_matrix(model, x) @ ad_matrix(model, y)))


def killing_gram(model: LieAlgebraModel) -> np.ndarray:
    """Gram matrix of the Killing form on the basis."""
    ads = basis_ad_matrices(model)
    return np.einsum("iab,jba->ij", ads, ads)


UNIFORMITY_TOL = 1e-9


def canonical_metric(model: LieAlgebraModel) -> MetricModel:
    """Measure the Killing diagonal and build the unscaled metric.

    Verifies that the basis is Killing-orthogonal with uniform diagonal
    magnitude and signs matching the Cartan tags; any violation means
    the basis normalization is wrong.
    """
    gram = killing_gram(model)
    diag = np.diag(gram).copy()
    off = gram - np.diag(diag)
    scale_ref = float(np.abs(diag).max())
    if scale_ref == 0.0:
        raise DomainError(
            "Killing form is identically zero (the rank-1 real algebra is "
            "abelian); no canonical metric exists")
    if float(np.abs(off).max()) > UNIFORMITY_TOL * max(scale_ref, 1.0):
        raise DomainError("basis is not Killing-orthogonal")
    if float(np.abs(np.abs(diag) - scale_ref).max()) > UNIFORMITY_TOL * scale_ref:
        raise DomainError("Killing diagonal magnitude is not uniform")
    signature = np.where(model.part, -1.0, 1.0)
    if np.any(np.sign(diag) != signature):
        raise DomainError("Killing signature does not match the Cartan tags")
    return MetricModel(model, diag, scale_ref, 1.0, signature)


def scaled_metric(model: LieAlgebraModel,
                  metric_scale: float | None = None) -> MetricModel:
    """Canonical metric rescaled to the curvature-normalizing multiplier.

    For sp(n,1) the multiplier is 1/(2(n+2)); for the other fields it
    must be supplied (see curvature.fit_metric_scale, which pins it by
    the quotient-curvature normalization).
    """
    base = canonical_metric(model)
    if metric_scale is None:
        if model.field is not GroundField.QUATERNION:
            raise DomainError(
                "metric_scale must be given (or fitted) for so/su")
        metric_scale = 1.0 / (2.0 * (model.n + 2))
    base.metric_scale = float(metric_scale)
    return base


def killing_closed_form_deviation(model: LieAlgebraModel) -> float:
    """Max deviation of the measured Killing Gram matrix from the
    closed form -8(n+2) on the compact block, +8(n+2) on the rest
    (quaternionic case)."""
    if model.field is not GroundField.QUATERNION:
        raise DomainError("closed form stated for sp(n,1) only")
    expected = 8.0 * (model.n + 2) * np.diag(np.where(model.part, -1.0, 1.0))
    return float(np.abs(killing_gram(model) - expected).max())


def verify_killing_invariance(model: LieAlgebraModel, trials: int,
                              seed: int = 42) -> float:
    """Max over random triples of |B([X,Y],Z) + B(Y,[X,Z])|, normalized.

    The normalizer is the canonical scale times the coordinate norms, so
    the returned figure is comparable across ranks.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    tensor = structure_constants(model)
    gram = killing_gram(model)
    scale = float(np.abs(gram).max())
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    worst = 0.0
    for _ in range(trials):
        x, y, z = rng.standard_normal((3, model.dim))
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        z /= np.linalg.norm(z)
        xy = tensor.bracket_coords(x, y)
        xz = tensor.bracket_coords(x, z)
        dev = abs(float(xy @ gram @ z) + float(y @ gram @ xz))
        worst = max(worst, dev / scale)
    return worst


def inner_product(metric: MetricModel, x: np.ndarray, y: np.ndarray,
                  scaled: bool = True) -> float:
    return metric.inner(x, y, scaled=scaled)


@dataclass
class OperatorNormEstimate:
    value: float
    argmax_coords: np.ndarray


def _ascend_operator_norm(ads_part: np.ndarray, start: np.ndarray,
                          iters: int, stall_tol: float = 1e-10):
    """Alternating maximization of sigma_max(sum_i x_i A_i) on the unit
    sphere: given x, take the top singular pair (u, v) and move x toward
    its gradient u^T A_i v.  Monotone, so it stalls only at a stationary
    point."""
    x = start / np.linalg.norm(start)
    best = -np.inf
    for _ in range(max(iters, 1)):
        m = np.einsum("i,iab->ab", x, ads_part)
        u_mat, sing, vt = np.linalg.svd(m)
        sigma = float(sing[0])
        if sigma <= best * (1.0 + stall_tol):
            break
        best = sigma
        grad = np.einsum("a,iab,b->i", u_mat[:, 0], ads_part, vt[0])
        norm = np.linalg.norm(grad)
        if norm == 0.0:
            break
        x = grad / norm
    return best, x


def estimate_C1_C2(metric: MetricModel, samples: int = 64,
                   ascent_iters: int = 200, seed: int = 42):
    """Lower-bound estimates of the bracket operator-norm constants.

    c1 is the supremum over unit X in the noncompact part of the metric
    operator norm of ad X; c2 the same over the compact part.  Because
    the scaled metric is a multiple of the identity, the operator norm
    equals the top singular value of the coordinate ad matrix divided by
    sqrt(scalar).  Random restarts refine deterministic canonical
    starts; estimates never exceed the true suprema.
    """
    model = metric.algebra
    ads = basis_ad_matrices(model)
    root_scalar = float(np.sqrt(metric.scalar))
    out = []
    for part_idx in (model.p_indices, model.k_indices):
        ads_part = ads[part_idx]
        starts = [np.eye(len(part_idx))[0]]
        if samples > 0:
            rng = np.random.default_rng(np.random.SeedSequence(seed))
            starts.extend(rng.standard_normal((samples, len(part_idx))))
        best, best_x = -np.inf, None
        for start in starts:
            sigma, x = _ascend_operator_norm(ads_part, np.asarray(start),
                                             ascent_iters)
            if sigma > best:
                best, best_x = sigma, x
        coords = np.zeros(model.dim)
        coords[part_idx] = best_x / root_scalar  # metric-unit argmax
        out.append(OperatorNormEstimate(best / root_scalar, coords))
    c1, c2 = out
    return c1, c2
