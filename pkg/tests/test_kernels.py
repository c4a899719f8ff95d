"""Backend equivalence: the compiled kernels must agree with the numpy
fallback bit-for-bit up to float reassociation."""

import numpy as np
import pytest

from orbivol._kernels import BracketTable, backend_name, cykernels, pykernels


def random_table(rng, dim, nnz):
    entries = [(int(rng.integers(dim)), int(rng.integers(dim)),
                int(rng.integers(dim)), float(rng.standard_normal()))
               for _ in range(nnz)]
    return BracketTable.from_entries(dim, entries)


def test_backend_is_selected():
    assert backend_name in ("cy", "py")


def test_py_quat_matmul_identity():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((4, 4, 4))
    eye = np.zeros((4, 4, 4))
    eye[np.arange(4), np.arange(4), 0] = 1.0
    assert np.allclose(pykernels.quat_matmul(a, eye), a)
    assert np.allclose(pykernels.quat_matmul(eye, a), a)


def test_py_bracket_batch_zero_table():
    table = BracketTable.from_entries(5, [])
    x = np.ones((3, 5))
    assert np.all(pykernels.bracket_batch(table, x, x) == 0.0)


@pytest.mark.skipif(cykernels is None, reason="compiled kernels unavailable")
class TestBackendAgreement:
    def test_quat_matmul(self):
        rng = np.random.default_rng(1)
        for rows, inner, cols in ((3, 3, 3), (2, 5, 4), (1, 1, 1)):
            a = rng.standard_normal((rows, inner, 4))
            b = rng.standard_normal((inner, cols, 4))
            assert np.allclose(cykernels.quat_matmul(a, b),
                               pykernels.quat_matmul(a, b),
                               rtol=1e-13, atol=1e-13)

    def test_bracket_batch(self):
        rng = np.random.default_rng(2)
        table = random_table(rng, 12, 80)
        x = rng.standard_normal((40, 12))
        y = rng.standard_normal((40, 12))
        assert np.allclose(cykernels.bracket_batch(table, x, y),
                           pykernels.bracket_batch(table, x, y),
                           rtol=1e-12, atol=1e-13)

    def test_bracket_batch_large_batch_chunking(self):
        rng = np.random.default_rng(3)
        table = random_table(rng, 6, 30)
        x = rng.standard_normal((1537, 6))  # crosses the chunk boundary
        y = rng.standard_normal((1537, 6))
        assert np.allclose(cykernels.bracket_batch(table, x, y),
                           pykernels.bracket_batch(table, x, y),
                           rtol=1e-12, atol=1e-13)
