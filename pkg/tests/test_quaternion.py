import numpy as np
import pytest

from orbivol.quaternion import (
    I,
    J,
    K,
    ONE,
    DimensionError,
    GroundField,
    Quaternion,
    QuaternionMatrix,
    alpha,
    beta,
    elem,
    is_in_lie_algebra,
    is_in_sp_lie_algebra,
    mat_bracket,
    quat_mul,
    signature_matrix,
    trace_pairing,
)


def random_quat(rng):
    return Quaternion(*rng.standard_normal(4))


def random_matrix(rng, n, m=None):
    return QuaternionMatrix(rng.standard_normal((n, m or n, 4)))


class TestQuaternionScalars:
    def test_multiplication_table(self):
        assert quat_mul(I, J).isclose(K)
        assert quat_mul(J, K).isclose(I)
        assert quat_mul(K, I).isclose(J)
        assert quat_mul(J, I).isclose(-K)
        for unit in (I, J, K):
            assert quat_mul(unit, unit).isclose(-ONE)
        ijk = quat_mul(quat_mul(I, J), K)
        assert ijk.isclose(-ONE)

    def test_one_plus_i_times_one_minus_i(self):
        a = Quaternion(1, 1, 0, 0)
        b = Quaternion(1, -1, 0, 0)
        assert quat_mul(a, b).isclose(Quaternion(2, 0, 0, 0))

    def test_norm_multiplicative(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            a, b = random_quat(rng), random_quat(rng)
            assert abs(quat_mul(a, b).norm() - a.norm() * b.norm()) < 1e-12

    def test_associative(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a, b, c = (random_quat(rng) for _ in range(3))
            left = quat_mul(quat_mul(a, b), c)
            right = quat_mul(a, quat_mul(b, c))
            assert left.isclose(right, tol=1e-12)

    def test_conj_antiautomorphism(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a, b = random_quat(rng), random_quat(rng)
            assert quat_mul(a, b).conj().isclose(
                quat_mul(b.conj(), a.conj()), tol=1e-12)

    def test_norm_squared_is_q_qbar(self):
        q = Quaternion(0.3, -1.2, 2.0, 0.5)
        prod = quat_mul(q, q.conj())
        assert abs(prod.w - q.norm() ** 2) < 1e-12
        assert abs(prod.x) + abs(prod.y) + abs(prod.z) < 1e-14


class TestQuaternionMatrices:
    def test_conj_transpose_involution(self):
        rng = np.random.default_rng(3)
        a = random_matrix(rng, 4, 3)
        assert a.conj_transpose().conj_transpose().isclose(a, tol=0.0)

    def test_product_conj_transpose_reverses(self):
        rng = np.random.default_rng(4)
        a, b = random_matrix(rng, 3), random_matrix(rng, 3)
        lhs = (a @ b).conj_transpose()
        rhs = b.conj_transpose() @ a.conj_transpose()
        assert lhs.isclose(rhs, tol=1e-12)

    def test_bracket_antisymmetric_and_self_zero(self):
        rng = np.random.default_rng(5)
        a, b = random_matrix(rng, 3), random_matrix(rng, 3)
        assert mat_bracket(a, a).max_abs() == 0.0
        assert (mat_bracket(a, b) + mat_bracket(b, a)).max_abs() == 0.0

    def test_bracket_unit_matrices(self):
        # [e12, e21] = e11 - e22
        e12, e21 = elem(2, 1, 2), elem(2, 2, 1)
        expected = elem(2, 1, 1) - elem(2, 2, 2)
        assert mat_bracket(e12, e21).isclose(expected, tol=0.0)

    def test_bracket_jacobi(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            a, b, c = (random_matrix(rng, 3) for _ in range(3))
            total = (mat_bracket(mat_bracket(a, b), c)
                     + mat_bracket(mat_bracket(b, c), a)
                     + mat_bracket(mat_bracket(c, a), b))
            assert total.max_abs() < 1e-12

    def test_bracket_bilinear_exact_for_integers(self):
        rng = np.random.default_rng(7)
        a = QuaternionMatrix(rng.integers(-3, 4, size=(3, 3, 4)).astype(float))
        b = QuaternionMatrix(rng.integers(-3, 4, size=(3, 3, 4)).astype(float))
        c = QuaternionMatrix(rng.integers(-3, 4, size=(3, 3, 4)).astype(float))
        lhs = mat_bracket(a + b, c)
        rhs = mat_bracket(a, c) + mat_bracket(b, c)
        assert (lhs - rhs).max_abs() == 0.0

    def test_bracket_size_mismatch(self):
        with pytest.raises(DimensionError):
            mat_bracket(QuaternionMatrix.zeros(2), QuaternionMatrix.zeros(3))
        with pytest.raises(DimensionError):
            mat_bracket(QuaternionMatrix.zeros(2, 3), QuaternionMatrix.zeros(2, 3))

    def test_scale_by_quaternion_is_left_multiplication(self):
        rng = np.random.default_rng(8)
        m = random_matrix(rng, 3)
        q = random_quat(rng)
        scaled = m.scale(q)
        for r in range(3):
            for c in range(3):
                assert scaled[r, c].isclose(quat_mul(q, m[r, c]), tol=1e-12)


class TestAlgebraMembership:
    def test_noncompact_generator_is_member(self):
        n = 2
        assert is_in_sp_lie_algebra(beta(n + 1, 1, n + 1), n)

    def test_real_unit_is_not_member(self):
        n = 2
        assert not is_in_sp_lie_algebra(elem(n + 1, 1, 1), n)

    def test_wrong_size_raises(self):
        with pytest.raises(DimensionError):
            is_in_sp_lie_algebra(QuaternionMatrix.zeros(3), 3)

    def test_signature_matrix(self):
        j = signature_matrix(2)
        assert j[0, 0].isclose(ONE) and j[2, 2].isclose(-ONE)

    def test_field_restrictions(self):
        n = 2
        a = alpha(n + 1, 1, 2)
        assert is_in_lie_algebra(a, GroundField.REAL, n)
        ib = beta(n + 1, 1, 2).scale(I)
        assert not is_in_lie_algebra(ib, GroundField.REAL, n)
        assert is_in_lie_algebra(ib, GroundField.COMPLEX, n)
        jb = beta(n + 1, 1, 2).scale(J)
        assert not is_in_lie_algebra(jb, GroundField.COMPLEX, n)
        assert is_in_lie_algebra(jb, GroundField.QUATERNION, n)
        # nonzero trace fails the complex (special unitary) test
        idiag = elem(n + 1, 1, 1, I)
        assert not is_in_lie_algebra(idiag, GroundField.COMPLEX, n)

    def test_trace_pairing_is_componentwise(self):
        rng = np.random.default_rng(9)
        a, b = random_matrix(rng, 3), random_matrix(rng, 3)
        direct = float(np.sum(a.data * b.data))
        assert abs(trace_pairing(a, b) - direct) == 0.0


def test_ground_field_parse():
    assert GroundField.parse("h") is GroundField.QUATERNION
    assert GroundField.parse("REAL") is GroundField.REAL
    assert GroundField.parse("Complex") is GroundField.COMPLEX
    with pytest.raises(Exception):
        GroundField.parse("octonion")
