"""Compiled kernel vs pure-numpy fallback agreement."""

import numpy as np
import pytest

from spintime import kernels
from spintime.quantify import cell_bivector, quantify_operator


def dense_oracle(cell, x, n):
    d = cell.shape[0]
    total = np.zeros((d**n, d**n), dtype=complex)
    for k in range(n):
        term = np.eye(1)
        for slot in range(n):
            term = np.kron(term, cell if slot == k else np.eye(d))
        total += term
    return total @ x


class TestKernels:
    def test_python_path_matches_dense_oracle(self):
        rng = np.random.default_rng(0)
        cell = rng.standard_normal((3, 3))
        x = rng.standard_normal(27)
        got = kernels.coproduct_matvec(cell, x, 3, impl="python")
        assert np.allclose(got, dense_oracle(cell, x, 3).real, atol=1e-12)

    @pytest.mark.skipif(not kernels.HAVE_COMPILED, reason="extension not built")
    def test_compiled_matches_python(self):
        rng = np.random.default_rng(1)
        cell = rng.standard_normal((4, 4))
        for n in (1, 2, 3, 4):
            x = rng.standard_normal(4**n)
            a = kernels.coproduct_matvec(cell, x, n, impl="compiled")
            b = kernels.coproduct_matvec(cell, x, n, impl="python")
            assert np.allclose(a, b, atol=1e-12)

    @pytest.mark.skipif(not kernels.HAVE_COMPILED, reason="extension not built")
    def test_compiled_complex(self):
        rng = np.random.default_rng(2)
        cell = cell_bivector(6, 5, half=False)
        x = rng.standard_normal(512) + 1j * rng.standard_normal(512)
        a = kernels.coproduct_matvec(cell, x, 3, impl="compiled")
        b = kernels.coproduct_matvec(cell, x, 3, impl="python")
        assert np.allclose(a, b, atol=1e-12)

    def test_matches_materialized_operator(self):
        cell = cell_bivector(1, 5, half=False)
        qop = quantify_operator(cell, 3)
        rng = np.random.default_rng(3)
        x = rng.standard_normal(512)
        want = qop.to_sparse() @ x
        got = kernels.coproduct_matvec(cell, x, 3)
        assert np.allclose(got, want, atol=1e-12)

    def test_explicit_compiled_request_errors_when_missing(self, monkeypatch):
        monkeypatch.setattr(kernels, "HAVE_COMPILED", False)
        with pytest.raises(RuntimeError):
            kernels.coproduct_matvec(np.eye(2), np.ones(4), 2, impl="compiled")
