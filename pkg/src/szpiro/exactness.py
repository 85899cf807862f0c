"""Degree-by-degree exactness test by linear algebra over F_p.

For a graded complex 0 -> F2 -> F1 -> F0, each graded piece is a finite
dimensional vector space.  Exactness at F2 and F1 up to degree D is checked by
comparing ranks of the induced maps, which gives an oracle for the
Buchsbaum-Eisenbud test that shares no code with the Gröbner machinery.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernels
from .polymat import _coeff_mod

ORACLE_PRIME = 32003


def _homogeneous_degree(f, w):
    degs = {sum(a * b for a, b in zip(e, w)) for e in f.terms}
    return degs.pop() if len(degs) == 1 else None


def _solve_shifts(res, w):
    """Generator degrees (q, r, s) making every entry homogeneous, or None."""
    n0, n1, n2 = res.n0, res.n1, res.n2
    nodes = n0 + n1 + n2
    # node ids: F0 0..n0-1, F1 n0.., F2 n0+n1..
    edges = {i: [] for i in range(nodes)}
    for i in range(n0):
        for k in range(n1):
            f = res.phi[i, k]
            if f:
                d = _homogeneous_degree(f, w)
                if d is None:
                    return None
                edges[i].append((n0 + k, d))
                edges[n0 + k].append((i, -d))
    for k in range(n1):
        for l in range(n2):
            f = res.psi[k, l]
            if f:
                d = _homogeneous_degree(f, w)
                if d is None:
                    return None
                edges[n0 + k].append((n0 + n1 + l, d))
                edges[n0 + n1 + l].append((n0 + k, -d))
    deg = [None] * nodes
    for start in range(nodes):
        if deg[start] is not None:
            continue
        deg[start] = 0
        comp, stack = [start], [start]
        while stack:
            a = stack.pop()
            for b, d in edges[a]:
                if deg[b] is None:
                    deg[b] = deg[a] + d
                    comp.append(b)
                    stack.append(b)
                elif deg[b] != deg[a] + d:
                    return None
        low = min(deg[c] for c in comp)
        for c in comp:
            deg[c] -= low
    return deg[:n0], deg[n0:n0 + n1], deg[n0 + n1:]


def find_grading(res, max_weight=3):
    """First weight vector in {1..max_weight}^nvars (by total weight) grading the complex."""
    nv = res.ring.nvars
    cands = sorted(product(range(1, max_weight + 1), repeat=nv), key=lambda w: (sum(w), w))
    for w in cands:
        shifts = _solve_shifts(res, w)
        if shifts is not None:
            return list(w), shifts
    return None


def monomials_of_degree(w, d):
    """Exponent vectors with weighted degree exactly d."""
    out = []

    def rec(i, left, acc):
        if i == len(w) - 1:
            if left % w[i] == 0:
                out.append(tuple(acc + [left // w[i]]))
            return
        for k in range(left // w[i] + 1):
            rec(i + 1, left - k * w[i], acc + [k])

    if d < 0:
        return out
    if not w:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


def _piece(degs, w, d):
    basis = []
    for j, g in enumerate(degs):
        for m in monomials_of_degree(w, d - g):
            basis.append((j, m))
    return basis


def _map_matrix(M, src, dst, p):
    """Matrix of v -> M v from the src graded piece to the dst graded piece."""
    index = {b: i for i, b in enumerate(dst)}
    A = np.zeros((len(dst), len(src)), dtype=np.int64)
    for c, (k, m) in enumerate(src):
        for i in range(M.nrows):
            f = M[i, k]
            for e, coeff in f.terms.items():
                t = (i, tuple(a + b for a, b in zip(e, m)))
                A[index[t], c] = (A[index[t], c] + _coeff_mod(coeff, p)) % p
    return A


@dataclass
class TruncatedExactness:
    exact: bool
    D: int
    weights: list
    shifts: tuple
    failures: list = field(default_factory=list)
    table: list = field(default_factory=list)


def truncated_exactness(res, D=6, p=None, grading=None):
    """Exactness of 0 -> F2 -> F1 -> F0 in every degree <= D, over F_p.

    Returns None when the complex admits no positive grading with small weights.
    """
    char = res.ring.field.characteristic
    if p is None:
        p = char if char else ORACLE_PRIME
    if grading is None:
        if res.grading is not None:
            g = res.grading
            w = g.weights or [1] * res.ring.nvars
            grading = (list(w), (list(g.q_degrees), list(g.r_degrees), list(g.s_degrees)))
        else:
            grading = find_grading(res)
        if grading is None:
            return None
    w, (q, r, s) = grading
    failures, table = [], []
    for d in range(0, D + 1):
        P0, P1, P2 = _piece(q, w, d), _piece(r, w, d), _piece(s, w, d)
        rk_phi = _kernels.rank_mod_p(_map_matrix(res.phi, P1, P0, p), p) if P0 and P1 else 0
        rk_psi = _kernels.rank_mod_p(_map_matrix(res.psi, P2, P1, p), p) if P1 and P2 else 0
        ker_phi = len(P1) - rk_phi
        row = {"degree": d, "dim_F2": len(P2), "dim_F1": len(P1), "dim_F0": len(P0),
               "rank_psi": rk_psi, "rank_phi": rk_phi}
        table.append(row)
        if rk_psi != len(P2):
            failures.append((d, "psi not injective"))
        if ker_phi != rk_psi:
            failures.append((d, "homology at F1"))
    return TruncatedExactness(not failures, D, list(w), (q, r, s), failures, table)
