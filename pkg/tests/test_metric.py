import numpy as np
import pytest

from orbivol.basis import build_basis
from orbivol.metric import (
    canonical_metric,
    estimate_C1_C2,
    killing_closed_form_deviation,
    killing_form,
    killing_gram,
    scaled_metric,
    verify_killing_invariance,
)
from orbivol.quaternion import DomainError, GroundField
from orbivol.structure import structure_constants

H = GroundField.QUATERNION
SQRT2 = np.sqrt(2.0)


def unit_coord(model, kind):
    v = np.zeros(model.dim)
    v[next(b.index for b in model.basis if b.kind == kind)] = 1.0
    return v


class TestKillingForm:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_closed_form_all_basis_pairs(self, n):
        model = build_basis(H, n)
        assert killing_closed_form_deviation(model) <= 1e-8

    def test_compact_diagonal_value(self):
        model = build_basis(H, 2)
        e = unit_coord(model, ("alpha", 1, 2))
        assert abs(killing_form(model, e, e) + 8.0 * (2 + 2)) < 1e-9

    def test_noncompact_diagonal_value(self):
        model = build_basis(H, 2)
        e = unit_coord(model, ("beta_p", 1))
        assert abs(killing_form(model, e, e) - 8.0 * (2 + 2)) < 1e-9

    def test_off_diagonal_vanishes(self):
        model = build_basis(H, 1)
        gram = killing_gram(model)
        off = gram - np.diag(np.diag(gram))
        assert np.abs(off).max() < 1e-9

    def test_invariance_seeded_triples(self):
        model = build_basis(H, 2)
        assert verify_killing_invariance(model, trials=100, seed=42) <= 1e-8

    def test_invariance_deterministic(self):
        model = build_basis(H, 1)
        a = verify_killing_invariance(model, trials=1, seed=7)
        b = verify_killing_invariance(model, trials=1, seed=7)
        assert a == b

    def test_invariance_rejects_zero_trials(self):
        model = build_basis(H, 1)
        with pytest.raises(DomainError):
            verify_killing_invariance(model, trials=0)


class TestInnerProduct:
    def test_basis_self_pairing_unscaled(self):
        model = build_basis(H, 3)
        metric = canonical_metric(model)
        e = unit_coord(model, ("im_diag", 1, 1))
        assert abs(metric.inner(e, e, scaled=False) - 8.0 * (3 + 2)) < 1e-9

    def test_basis_self_pairing_scaled_is_four(self):
        for n in (1, 2, 3):
            model = build_basis(H, n)
            metric = scaled_metric(model)
            e = unit_coord(model, ("beta_p", 1))
            assert abs(metric.inner(e, e) - 4.0) < 1e-9

    def test_cross_part_pairing_vanishes(self):
        model = build_basis(H, 2)
        metric = scaled_metric(model)
        u = unit_coord(model, ("alpha", 1, 2))
        x = unit_coord(model, ("beta_p", 1))
        assert metric.inner(u, x) == 0.0

    def test_positive_definite_on_random_vectors(self):
        model = build_basis(H, 2)
        metric = scaled_metric(model)
        rng = np.random.default_rng(3)
        for _ in range(20):
            v = rng.standard_normal(model.dim)
            assert metric.inner(v, v) > 0.0


class TestOperatorNormConstants:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_sharp_values(self, n):
        metric = scaled_metric(build_basis(H, n))
        c1, c2 = estimate_C1_C2(metric, samples=16, ascent_iters=100, seed=42)
        assert 1.0 - 1e-3 <= c1.value <= 1.0 + 1e-6
        assert SQRT2 - 1e-3 <= c2.value <= SQRT2 + 1e-6

    def test_canonical_bracket_witnesses_the_supremum(self):
        # X = (1/2) beta_{1,n+1}, Y = (1/2) i alpha_{1,n+1} are metric-unit
        # and |[X, Y]| = 1, so the estimate cannot fall below 1
        model = build_basis(H, 2)
        metric = scaled_metric(model)
        x = 0.5 * unit_coord(model, ("beta_p", 1))
        y = 0.5 * unit_coord(model, ("im_alpha_p", 1, 1))
        assert abs(metric.norm(x) - 1.0) < 1e-12
        xy = structure_constants(model).bracket_coords(x, y)
        assert abs(metric.norm(xy) - 1.0) < 1e-12
        c1, _ = estimate_C1_C2(metric, samples=0, ascent_iters=50, seed=0)
        assert c1.value >= 1.0 - 1e-9

    def test_deterministic_without_samples(self):
        metric = scaled_metric(build_basis(H, 1))
        first = estimate_C1_C2(metric, samples=0, ascent_iters=40, seed=1)
        second = estimate_C1_C2(metric, samples=0, ascent_iters=40, seed=2)
        assert first[0].value == second[0].value
        assert first[1].value == second[1].value

    def test_argmax_is_metric_unit(self):
        metric = scaled_metric(build_basis(H, 2))
        c1, c2 = estimate_C1_C2(metric, samples=4, ascent_iters=60, seed=5)
        assert abs(metric.norm(c1.argmax_coords) - 1.0) < 1e-9
        assert abs(metric.norm(c2.argmax_coords) - 1.0) < 1e-9


def test_scaled_metric_requires_scale_for_other_fields():
    model = build_basis(GroundField.REAL, 3)
    with pytest.raises(DomainError):
        scaled_metric(model)
    explicit = scaled_metric(model, metric_scale=0.25)
    assert abs(explicit.scalar - 0.25 * explicit.canonical_scale) < 1e-12
