"""Dense linear algebra mod p on int64 arrays.

These are the hot loops behind evaluation probes (rank of a polynomial
matrix at random points) and the degree-truncated exactness oracle.  The
numba path is used when numba imports and ``SZPIRO_NO_NUMBA`` is unset;
otherwise a row-vectorized numpy version runs.  Both return identical
results.  Moduli must stay below 2**31 so products fit in int64.
"""

import os

import numpy as np

MAX_MODULUS = 2**31


def _want_numba():
    return os.environ.get("SZPIRO_NO_NUMBA", "").strip() not in ("1", "true", "yes")


try:  # pragma: no cover - depends on the environment
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def _inv_mod(a, p):
    return pow(int(a), p - 2, p)


# -- numpy fallback ---------------------------------------------------------


def _rank_np(a, p):
    a = np.mod(a, p).astype(np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * _inv_mod(a[r, c], p)) % p
        f = a[:, c].copy()
        f[r] = 0
        a -= np.outer(f, a[r]) % p
        a %= p
        r += 1
    return r


def _det_np(a, p):
    a = np.mod(a, p).astype(np.int64)
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + nz[0]
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = (det * int(a[c, c])) % p
        inv = _inv_mod(a[c, c], p)
        f = (a[c + 1:, c] * inv) % p
        a[c + 1:] = (a[c + 1:] - np.outer(f, a[c]) % p) % p
    return det % p


# -- numba kernels ----------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _powmod(a, e, p):
        result = 1
        a %= p
        while e > 0:
            if e & 1:
                result = (result * a) % p
            a = (a * a) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rank_nb(a, p):
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                a[i, j] %= p
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            inv = _powmod(a[r, c], p - 2, p)
            for j in range(cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    f = a[i, c]
                    for j in range(cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r

    @njit(cache=True)
    def _det_nb(a, p):
        n = a.shape[0]
        for i in range(n):
            for j in range(n):
                a[i, j] %= p
        det = 1
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    t = a[c, j]
                    a[c, j] = a[piv, j]
                    a[piv, j] = t
                det = (p - det) % p
            det = (det * a[c, c]) % p
            inv = _powmod(a[c, c], p - 2, p)
            for i in range(c + 1, n):
                if a[i, c] != 0:
                    f = (a[i, c] * inv) % p
                    for j in range(c, n):
                        a[i, j] = (a[i, j] - f * a[c, j]) % p
        return det


def backend():
    return "numba" if HAVE_NUMBA and _want_numba() else "numpy"


def _prep(a, p):
    if not 2 < p < MAX_MODULUS:
        raise ValueError(f"modulus {p} outside (2, 2**31)")
    return np.array(a, dtype=np.int64, copy=True).reshape(np.shape(a))


def rank_mod_p(a, p):
    """Rank of an integer matrix over F_p."""
    a = _prep(a, p)
    if a.ndim != 2 or 0 in a.shape:
        return 0
    if backend() == "numba":
        return int(_rank_nb(a, p))
    return _rank_np(a, p)


def det_mod_p(a, p):
    """Determinant of a square integer matrix over F_p, in [0, p)."""
    a = _prep(a, p)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("determinant of a non-square array")
    if a.shape[0] == 0:
        return 1
    if backend() == "numba":
        return int(_det_nb(a, p))
    return _det_np(a, p)
