import numpy as np
import pytest
import sympy

from szpiro import _kernels

P = 2**31 - 1


@pytest.fixture(params=["numpy", "numba"])
def backend(request, monkeypatch):
    if request.param == "numba" and not _kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    monkeypatch.setenv("SZPIRO_NO_NUMBA", "1" if request.param == "numpy" else "0")
    assert _kernels.backend() == request.param
    return request.param


def test_rank_and_det_match_sympy(backend):
    rng = np.random.default_rng(3)
    for n in (1, 3, 6):
        a = rng.integers(-50, 50, size=(n, n))
        det = int(sympy.Matrix(a.tolist()).det()) % P
        assert _kernels.det_mod_p(a, P) == det
        assert _kernels.rank_mod_p(a, P) == sympy.Matrix(a.tolist()).rank()


def test_rank_deficient(backend):
    a = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert _kernels.rank_mod_p(a, P) == 2
    assert _kernels.det_mod_p(a, P) == 0
    assert _kernels.rank_mod_p(np.zeros((0, 3), dtype=np.int64), P) == 0
    assert _kernels.det_mod_p(np.zeros((0, 0), dtype=np.int64), P) == 1


def test_backends_agree():
    rng = np.random.default_rng(11)
    a = rng.integers(0, P, size=(40, 40))
    a[5] = (a[3] * 7) % P
    out = {}
    for name in ("numpy", "numba"):
        with pytest.MonkeyPatch.context() as mp:
            mp.setenv("SZPIRO_NO_NUMBA", "1" if name == "numpy" else "0")
            out[name] = (_kernels.rank_mod_p(a, P), _kernels.det_mod_p(a, P))
    assert out["numpy"] == out["numba"] == (39, 0)


def test_modulus_guard():
    with pytest.raises(ValueError):
        _kernels.rank_mod_p([[1]], 2**31 + 11)
    with pytest.raises(ValueError):
        _kernels.det_mod_p([[1, 2]], 7)
