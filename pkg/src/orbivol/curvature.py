"""Connection, curvature tensor, sectional-curvature scans and the
complex structure on the noncompact part.

Everything is evaluated algebraically in the left-invariant frame: the
connection is a bilinear map on coordinates built from the Cartan-split
bracket, and curvature composes it.  Two independent evaluation paths
are kept side by side: the definition (compositions of the connection)
and the case-by-case closed forms; their agreement is a standing test.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import bracket_batch
from .basis import LieAlgebraModel
from .metric import MetricModel, canonical_metric, scaled_metric
from .quaternion import DomainError, GroundField
from .structure import structure_constants

DEGENERATE_PLANE_TOL = 1e-12
FD_STEP = 1e-5


class DegeneratePlaneError(ValueError):
    """The two vectors do not span a 2-plane."""


def _masks(model: LieAlgebraModel):
    k = model.part.astype(np.float64)
    return k, 1.0 - k


def connection_batch(model: LieAlgebraModel, a: np.ndarray,
                     b: np.ndarray) -> np.ndarray:
    """Levi-Civita connection of the scaled left-invariant metric.

    With a = U + X and b = V + Y split into compact/noncompact parts,
    nabla_a b = 1/2 [U,V] + 3/2 [U,Y] - 1/2 [X,V] + 1/2 [X,Y].
    Rows of a, b are coordinate vectors.
    """
    table = structure_constants(model).table
    km, pm = _masks(model)
    u, x = a * km, a * pm
    v, y = b * km, b * pm
    return (0.5 * bracket_batch(table, u, v)
            + 1.5 * bracket_batch(table, u, y)
            - 0.5 * bracket_batch(table, x, v)
            + 0.5 * bracket_batch(table, x, y))


def connection(model: LieAlgebraModel, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return connection_batch(model, np.atleast_2d(a), np.atleast_2d(b))[0]


def curvature_via_definition(model: LieAlgebraModel, x: np.ndarray,
                             y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """R(x,y)z from the definition, composing the algebraic connection."""
    x, y, z = np.atleast_2d(x), np.atleast_2d(y), np.atleast_2d(z)
    nyz = connection_batch(model, y, z)
    nxz = connection_batch(model, x, z)
    first = connection_batch(model, x, nyz) - connection_batch(model, y, nxz)
    xy = bracket_batch(structure_constants(model).table, x, y)
    return (first - connection_batch(model, xy, z))[0]


def curvature_batch_closed(model: LieAlgebraModel, x: np.ndarray,
                           y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """R(x,y)z by the part-pure case formulas, extended trilinearly.

    The printed cases cover (k,k,k), (p,p,p), (p,k,p), (p,k,k) with
    repeated argument, and (p,p,k); the remaining mixed cases follow
    from antisymmetry in the first slot pair and the pair symmetry of
    the (4,0) tensor.
    """
    table = structure_constants(model).table
    km, pm = _masks(model)
    u, xx = x * km, x * pm
    v, yy = y * km, y * pm
    w, zz = z * km, z * pm

    def br(p, q):
        return bracket_batch(table, p, q)

    out = 0.25 * br(br(v, u), w)                     # R(U,V)W
    out += 0.75 * br(br(u, v), zz)                   # R(U,V)Z
    out += 0.25 * (br(xx, br(v, w)) + br(v, br(xx, w)))    # R(X,V)W
    out -= 0.25 * (br(yy, br(u, w)) + br(u, br(yy, w)))    # R(U,Y)W
    out += 0.25 * (br(xx, br(v, zz)) + br(v, br(xx, zz)))  # R(X,V)Y
    out -= 0.25 * (br(yy, br(u, zz)) + br(u, br(yy, zz)))  # R(U,Y)Z
    out -= 1.75 * br(br(xx, yy), zz)                 # R(X,Y)Z
    out += 0.75 * br(w, br(xx, yy))                  # R(X,Y)V
    return out


def curvature_via_closed_forms(model: LieAlgebraModel, x: np.ndarray,
                               y: np.ndarray, z: np.ndarray) -> np.ndarray:
    return curvature_batch_closed(model, np.atleast_2d(x), np.atleast_2d(y),
                                  np.atleast_2d(z))[0]


def curvature_value(metric: MetricModel, x1, x2, x3, x4) -> float:
    """<R(x1,x2)x3, x4> under the scaled metric."""
    r = curvature_via_closed_forms(metric.algebra, x1, x2, x3)
    return float(metric.scalar * (r @ np.asarray(x4, dtype=np.float64)))


def sectional_curvature(metric: MetricModel, v1: np.ndarray,
                        v2: np.ndarray) -> float:
    v1 = np.asarray(v1, dtype=np.float64)
    v2 = np.asarray(v2, dtype=np.float64)
    k = sectional_curvature_batch(metric, v1[None, :], v2[None, :],
                                  on_degenerate="raise")
    return float(k[0])


def sectional_curvature_batch(metric: MetricModel, v1: np.ndarray,
                              v2: np.ndarray,
                              on_degenerate: str = "nan") -> np.ndarray:
    """K for rows of (v1, v2); degenerate rows raise or give NaN.

    The Gram determinant test uses coordinates normalized per row, so
    the threshold is scale-free.
    """
    model = metric.algebra
    s = metric.scalar
    a = s * np.einsum("bi,bi->b", v1, v1)
    b = s * np.einsum("bi,bi->b", v2, v2)
    c = s * np.einsum("bi,bi->b", v1, v2)
    denom = a * b - c * c
    bad = denom <= DEGENERATE_PLANE_TOL * np.maximum(a * b, 1e-300)
    if np.any(bad):
        if on_degenerate == "raise":
            raise DegeneratePlaneError("vectors do not span a plane")
    r = curvature_batch_closed(model, v1, v2, v2)
    num = s * np.einsum("bi,bi->b", r, v1)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = num / denom
    out[bad] = np.nan
    return out


# -- complex structure on the noncompact part --------------------------

def complex_structure_matrix(model: LieAlgebraModel) -> np.ndarray:
    """Signed permutation J on coordinates, supported on the p block.

    Per column j of the noncompact block the coefficient map is
    (a1, a2, a3, a4) -> (a2, -a1, -a4, a3) in the quaternionic case and
    (a1, a2) -> (a2, -a1) in the complex one.
    """
    if model.field is GroundField.REAL:
        raise DomainError("no complex structure in the real case")
    dim = model.dim
    j_mat = np.zeros((dim, dim))
    by_kind = {b.kind: b.index for b in model.basis}
    for j in range(1, model.n + 1):
        b_idx = by_kind[("beta_p", j)]
        ia_idx = by_kind[("im_alpha_p", 1, j)]
        j_mat[b_idx, ia_idx] = 1.0
        j_mat[ia_idx, b_idx] = -1.0
        if model.field is GroundField.QUATERNION:
            ja_idx = by_kind[("im_alpha_p", 2, j)]
            ka_idx = by_kind[("im_alpha_p", 3, j)]
            j_mat[ja_idx, ka_idx] = -1.0
            j_mat[ka_idx, ja_idx] = 1.0
    return j_mat


def complex_structure_apply(model: LieAlgebraModel, x: np.ndarray,
                            tol: float = 1e-12) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if float(np.abs(x[model.k_indices]).max(initial=0.0)) > tol:
        raise DomainError("complex structure is defined on the noncompact "
                          "part; compact coordinates must vanish")
    return complex_structure_matrix(model) @ x


# -- metric normalization for the real and complex cases ---------------

def _base_curvature_sample(model: LieAlgebraModel, metric: MetricModel) -> float:
    """Quotient-space sectional curvature of a canonical horizontal plane.

    Submersion correction: K_base = K_total + (3/4) |vertical [X,Y]|^2
    for horizontal X, Y; the bracket of two noncompact vectors is
    entirely vertical.
    """
    by_kind = {b.kind: b.index for b in model.basis}
    x = np.zeros(model.dim)
    x[by_kind[("beta_p", 1)]] = 1.0
    if model.field is GroundField.REAL:
        if model.n < 2:
            raise DomainError("need rank >= 2 to fit the real metric scale")
        y = np.zeros(model.dim)
        y[by_kind[("beta_p", 2)]] = 1.0
    else:
        y = complex_structure_matrix(model) @ x
    x = x / metric.norm(x)
    y = y / metric.norm(y)
    k_total = curvature_value(metric, x, y, y, x)
    xy = structure_constants(model).bracket_coords(x, y)
    vertical = xy * model.part
    return k_total + 0.75 * metric.inner(vertical, vertical)


def fit_metric_scale(model: LieAlgebraModel, target: float = -1.0,
                     tol: float = 1e-13, max_iter: int = 200) -> float:
    """Metric multiplier making the quotient curvature sample equal -1.

    Bisection on the multiplier; the sample curvature is strictly
    increasing in it (it scales as 1/multiplier), so the bracket is easy
    to establish.
    """
    def f(m: float) -> float:
        metric = scaled_metric(model, metric_scale=m)
        return _base_curvature_sample(model, metric) - target

    lo, hi = 1e-8, 1.0
    while f(hi) < 0.0 and hi < 1e8:
        hi *= 4.0
    while f(lo) > 0.0 and lo > 1e-16:
        lo /= 4.0
    flo, fhi = f(lo), f(hi)
    if flo > 0.0 or fhi < 0.0:
        raise DomainError("could not bracket the curvature normalization")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol or (hi - lo) <= tol * mid:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def default_scaled_metric(model: LieAlgebraModel) -> MetricModel:
    """The curvature-normalized metric for any of the three fields."""
    if model._metric is None:
        if model.field is GroundField.QUATERNION:
            model._metric = scaled_metric(model)
        else:
            model._metric = scaled_metric(model, fit_metric_scale(model))
    return model._metric


# -- scans --------------------------------------------------------------

@dataclass
class PlaneSample:
    v1: np.ndarray
    v2: np.ndarray
    curvature: float

    def to_dict(self) -> dict:
        return {"v1": self.v1.tolist(), "v2": self.v2.tolist(),
                "curvature": self.curvature}


def basis_plane_scan(metric: MetricModel) -> tuple[float, PlaneSample]:
    """Exhaust all unordered basis pairs; returns the max curvature."""
    model = metric.algebra
    dim = model.dim
    ii, jj = np.triu_indices(dim, k=1)
    eye = np.eye(dim)
    ks = sectional_curvature_batch(metric, eye[ii], eye[jj])
    best = int(np.nanargmax(ks))
    sample = PlaneSample(eye[ii[best]], eye[jj[best]], float(ks[best]))
    return float(ks[best]), sample


def _orthonormalize_pairs(v1: np.ndarray, v2: np.ndarray, scalar: float):
    """Row-wise Gram-Schmidt to metric-orthonormal pairs.

    Rows that fail to span a plane are left as NaN.
    """
    n1 = np.linalg.norm(v1, axis=1, keepdims=True)
    u1 = v1 / n1
    proj = np.einsum("bi,bi->b", u1, v2)[:, None]
    w = v2 - proj * u1
    n2 = np.linalg.norm(w, axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        u2 = np.where(n2 > 1e-12, w / n2, np.nan)
    root = np.sqrt(scalar)
    return u1 / root, u2 / root


def _thread_count() -> int:
    raw = os.environ.get("ORBIVOL_THREADS", "0").strip() or "0"
    try:
        val = int(raw)
    except ValueError:
        val = 0
    if val <= 0:
        return min(os.cpu_count() or 1, 8)
    return val


@dataclass
class ScanReport:
    field: str
    n: int
    bound: float | None
    empirical_max: float
    argmax: PlaneSample
    samples: int
    seed: int

    @property
    def gap(self) -> float | None:
        return None if self.bound is None else self.bound - self.empirical_max

    def to_dict(self) -> dict:
        return {
            "field": self.field, "n": self.n, "bound": self.bound,
            "empirical_max": self.empirical_max, "gap": self.gap,
            "argmax_coords": self.argmax.to_dict(),
            "samples": self.samples, "seed": self.seed,
        }


def _ascend_plane(metric: MetricModel, v1: np.ndarray, v2: np.ndarray,
                  ascent_iters: int, step: float = FD_STEP):
    """Gradient ascent of K over raw vector pairs, central differences.

    Each iteration evaluates the full finite-difference ensemble as one
    batch; the pair is re-orthonormalized inside the objective, so the
    walk stays on the plane Grassmannian.
    """
    model = metric.algebra
    dim = model.dim
    params = np.concatenate([v1, v2])

    def evaluate(block: np.ndarray) -> np.ndarray:
        a, b = block[:, :dim], block[:, dim:]
        u1, u2 = _orthonormalize_pairs(a, b, metric.scalar)
        return sectional_curvature_batch(metric, u1, u2)

    best = float(evaluate(params[None, :])[0])
    lr = 1e-2
    for _ in range(max(ascent_iters, 0)):
        ensemble = np.tile(params, (4 * dim, 1))
        for d in range(2 * dim):
            ensemble[2 * d, d] += step
            ensemble[2 * d + 1, d] -= step
        vals = evaluate(ensemble)
        grad = (vals[0::2] - vals[1::2]) / (2.0 * step)
        grad = np.nan_to_num(grad)
        gnorm = np.linalg.norm(grad)
        if gnorm == 0.0:
            break
        improved = False
        while lr > 1e-12:
            trial = params + lr * grad / gnorm
            val = float(evaluate(trial[None, :])[0])
            if np.isfinite(val) and val > best:
                rel_gain = (val - best) / max(abs(best), 1e-30)
                params, best = trial, val
                improved = True
                if rel_gain < 1e-12:
                    return best, params[:dim], params[dim:]
                break
            lr *= 0.5
        if not improved:
            break
    return best, params[:dim], params[dim:]


def global_curvature_scan(metric: MetricModel, samples: int = 10000,
                          ascent_iters: int = 200, seed: int = 42,
                          bound: float | None = None,
                          top_k: int = 8) -> ScanReport:
    """Random orthonormal planes plus gradient ascent from the leaders.

    The reported maximum is a lower bound for the true supremum; the
    caller compares it against the printed upper bound.
    """
    model = metric.algebra
    dim = model.dim
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n_random = max(samples, 1)
    v1 = rng.standard_normal((n_random, dim))
    v2 = rng.standard_normal((n_random, dim))
    u1, u2 = _orthonormalize_pairs(v1, v2, metric.scalar)
    ks = sectional_curvature_batch(metric, u1, u2)
    ks = np.where(np.isfinite(ks), ks, -np.inf)

    order = np.argsort(ks)[::-1][:top_k]
    # basis-pair leaders join the candidate pool
    basis_max, basis_sample = basis_plane_scan(metric)
    candidates = [(float(ks[i]), u1[i], u2[i]) for i in order]
    candidates.append((basis_max, basis_sample.v1 / np.sqrt(metric.scalar),
                       basis_sample.v2 / np.sqrt(metric.scalar)))

    def refine(cand):
        val, a, b = cand
        return _ascend_plane(metric, a, b, ascent_iters)

    workers = _thread_count()
    if workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            refined = list(pool.map(refine, candidates))
    else:
        refined = [refine(c) for c in candidates]

    best_val, best_a, best_b = max(refined, key=lambda t: t[0])
    o1, o2 = _orthonormalize_pairs(best_a[None, :], best_b[None, :],
                                   metric.scalar)
    sample = PlaneSample(o1[0], o2[0], best_val)
    return ScanReport(model.field.value, model.n, bound, best_val, sample,
                      samples, seed)


def printed_curvature_bound(field: GroundField, n: int) -> float:
    """Published upper bound for the scaled-metric sectional curvature."""
    big = (3.0 + 4.0 * np.sqrt(2.0)) / 2.0
    if field is GroundField.QUATERNION:
        return big
    if field is GroundField.COMPLEX:
        return 13.0 / 4.0
    if n == 2:
        return 0.25
    if n == 3:
        return 13.0 / 4.0
    return big


# -- normalization checks ----------------------------------------------

def verify_holomorphic_normalization(metric: MetricModel, trials: int = 200,
                                     seed: int = 42) -> float:
    """Max deviation of |[X, JX]|^2 from 1 and of the quotient curvature
    from -1 over random unit X in the noncompact part."""
    model = metric.algebra
    if model.field is GroundField.REAL:
        raise DomainError("requires a complex structure")
    j_mat = complex_structure_matrix(model)
    tensor = structure_constants(model)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    p_idx = model.p_indices
    worst = 0.0
    for _ in range(trials):
        x = np.zeros(model.dim)
        x[p_idx] = rng.standard_normal(p_idx.size)
        x /= metric.norm(x)
        y = j_mat @ x
        xy = tensor.bracket_coords(x, y)
        br_sq = metric.inner(xy, xy)
        k_total = curvature_value(metric, x, y, y, x)
        vertical = xy * model.part
        k_base = k_total + 0.75 * metric.inner(vertical, vertical)
        worst = max(worst, abs(br_sq - 1.0), abs(k_base + 1.0))
    return worst
