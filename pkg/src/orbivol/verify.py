"""Bundled verification suites: every identity the library can check
against an independent oracle, run for one (field, rank) pair.

Each check returns its measured deviation and threshold; printed-identity
deviations are reported but marked non-fatal, since the matrix oracle,
not the printed text, is what downstream code consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import LieAlgebraModel, build_basis, count_by_kind, expected_dim
from .curvature import (
    curvature_batch_closed,
    curvature_via_closed_forms,
    curvature_via_definition,
    connection,
    default_scaled_metric,
    sectional_curvature_batch,
    verify_holomorphic_normalization,
)
from .identities import verify_bracket_identities
from .metric import (
    estimate_C1_C2,
    killing_closed_form_deviation,
    verify_killing_invariance,
)
from .quaternion import GroundField
from .structure import (
    jacobi_residual,
    max_expansion_residual,
    structure_constants,
    verify_cartan_relations,
)

SQRT2 = math.sqrt(2.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    deviation: float
    threshold: float
    fatal: bool = True
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "deviation": self.deviation, "threshold": self.threshold,
                "fatal": self.fatal, "detail": self.detail}


@dataclass
class VerificationReport:
    field: str
    n: int
    checks: list
    identity_families: list
    extras: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.fatal)

    def to_dict(self) -> dict:
        return {"field": self.field, "n": self.n, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks],
                "identity_families": self.identity_families,
                **self.extras}


def _random_unit_rows(rng, count, dim):
    rows = rng.standard_normal((count, dim))
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def run_verification(field: GroundField, n: int, trials: int = 100,
                     seed: int = 42, tol: float = 1e-9) -> VerificationReport:
    model = build_basis(field, n)
    checks: list[CheckResult] = []

    def add(name, deviation, threshold, fatal=True, detail=""):
        checks.append(CheckResult(name, deviation <= threshold,
                                  float(deviation), threshold, fatal, detail))

    # -- algebra layer
    dim_dev = abs(model.dim - expected_dim(field, n))
    add("dimension_formula", dim_dev, 0,
        detail=f"dim={model.dim} counts={count_by_kind(model)}")
    add("bracket_expansion_residual", max_expansion_residual(model), 1e-10)
    add("jacobi_identity", jacobi_residual(model), 1e-9)
    add("cartan_grading", 0.0 if verify_cartan_relations(model) else 1.0, 0)

    identity_families: list = []
    if field is GroundField.QUATERNION:
        report = verify_bracket_identities(model)
        identity_families = [r.to_dict() for r in report.results]
        worst = max(r.max_abs_deviation for r in report.results)
        add("printed_identity_families", worst, 1e-10, fatal=False,
            detail=f"{len(report.results)} families")

    # -- metric layer
    if field is GroundField.QUATERNION:
        add("killing_closed_form", killing_closed_form_deviation(model), 1e-8)
    add("killing_invariance", verify_killing_invariance(model, trials, seed),
        1e-8)

    metric = default_scaled_metric(model)
    extras: dict = {}
    if field is GroundField.QUATERNION:
        add("scaled_metric_scalar", abs(metric.scalar - 4.0), 1e-9)
        c1, c2 = estimate_C1_C2(metric, samples=16, ascent_iters=100,
                                seed=seed)
        dev_c1 = max(1.0 - 1e-3 - c1.value, c1.value - (1.0 + 1e-6), 0.0)
        dev_c2 = max(SQRT2 - 1e-3 - c2.value, c2.value - (SQRT2 + 1e-6), 0.0)
        add("bracket_norm_constants", max(dev_c1, dev_c2), 0.0,
            detail=f"c1={c1.value:.12f} c2={c2.value:.12f}")
        extras["operator_norm_constants"] = {
            "c1_est": c1.value, "c2_est": c2.value,
            "c1_argmax": c1.argmax_coords.tolist(),
            "c2_argmax": c2.argmax_coords.tolist(),
        }

    # -- curvature layer
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    x = _random_unit_rows(rng, trials, model.dim)
    y = _random_unit_rows(rng, trials, model.dim)
    z = _random_unit_rows(rng, trials, model.dim)
    w = _random_unit_rows(rng, trials, model.dim)

    worst_dual = worst_torsion = 0.0
    tensor = structure_constants(model)
    for a, b, c in zip(x, y, z):
        d1 = curvature_via_definition(model, a, b, c)
        d2 = curvature_via_closed_forms(model, a, b, c)
        worst_dual = max(worst_dual, float(np.max(np.abs(d1 - d2))))
        tors = connection(model, a, b) - connection(model, b, a) \
            - tensor.bracket_coords(a, b)
        worst_torsion = max(worst_torsion, float(np.max(np.abs(tors))))
    add("curvature_dual_path", worst_dual, tol)
    add("connection_torsion_free", worst_torsion, 1e-10)

    s = metric.scalar
    r_xyz = curvature_batch_closed(model, x, y, z)
    val = s * np.einsum("bi,bi->b", r_xyz, w)
    swap = s * np.einsum("bi,bi->b",
                         curvature_batch_closed(model, y, x, z), w)
    pair = s * np.einsum("bi,bi->b",
                         curvature_batch_closed(model, z, w, x), y)
    add("tensor_antisymmetry", float(np.max(np.abs(val + swap))), tol)
    add("tensor_pair_symmetry", float(np.max(np.abs(val - pair))), tol)

    km = model.part.astype(float)
    pm = 1.0 - km
    r_kkk = curvature_batch_closed(model, x * km, y * km, z * km)
    add("block_orthogonality_compact",
        float(np.max(np.abs(s * np.einsum("bi,bi->b", r_kkk, w * pm)))), tol)
    r_ppp = curvature_batch_closed(model, x * pm, y * pm, z * pm)
    add("block_orthogonality_noncompact",
        float(np.max(np.abs(s * np.einsum("bi,bi->b", r_ppp, w * km)))), tol)

    # sign structure on basis planes
    eye = np.eye(model.dim)
    ii, jj = np.triu_indices(model.dim, k=1)
    ks = sectional_curvature_batch(metric, eye[ii], eye[jj])
    both_p = (~model.part[ii]) & (~model.part[jj])
    both_k = model.part[ii] & model.part[jj]
    mixed = ~(both_p | both_k)
    add("nonpositive_on_noncompact_planes",
        float(np.max(ks[both_p], initial=-np.inf)), tol)
    neg_k = -float(np.min(ks[both_k], initial=np.inf)) if both_k.any() else 0.0
    add("nonnegative_on_compact_planes", neg_k, tol)
    add("nonnegative_on_mixed_planes",
        -float(np.min(ks[mixed], initial=np.inf)), tol)

    if field is not GroundField.REAL:
        add("holomorphic_normalization",
            verify_holomorphic_normalization(metric, min(trials, 200), seed),
            tol)

    return VerificationReport(field.value, n, checks, identity_families,
                              extras)
