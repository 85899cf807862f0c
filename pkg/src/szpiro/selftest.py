"""Seeded property suites: Plücker relations, symplectic ops, exactness oracle."""

import random
import time

from . import fixtures
from .io import problem_from_dict
from .poly import PolyRing
from .polymat import (
    BaseChange,
    PolyMatrix,
    alpha_plus_beta,
    beta_plus_alpha,
    fitting_ideal,
    is_split_symmetric,
    is_symplectic,
    paired_op,
    pluecker_sum,
)
from .resolution import check_acyclic_minimal
from .exactness import truncated_exactness

PLUECKER_PRIME = 2**31 - 1

# (rows, cols, len(a), len(b)); c gets rows - len(a) + q - 1 columns
PLUECKER_SHAPES = [(2, 4, 0, 0), (3, 6, 1, 0), (3, 6, 1, 1), (4, 8, 2, 0)]


def pluecker_instance(rng, ring, m, ncols, p, nb):
    M = PolyMatrix(ring, [[ring.const(rng.randrange(PLUECKER_PRIME)) for _ in range(ncols)] for _ in range(m)])
    q = m + 1 - nb
    s = m - p + q - 1
    a = [rng.randrange(ncols) for _ in range(p)]
    b = [rng.randrange(ncols) for _ in range(nb)]
    c = [rng.randrange(ncols) for _ in range(s)]
    return M, a, b, c


def suite_pluecker(count, seed, fault=False):
    ring = PolyRing(["x"], f"Fp:{PLUECKER_PRIME}")
    rng = random.Random(seed)
    results = []
    for shape in PLUECKER_SHAPES:
        bad = 0
        for k in range(count):
            M, a, b, c = pluecker_instance(rng, ring, *shape)
            value = pluecker_sum(M, a, b, c)
            if fault and k == 0:
                value = value + ring.one
            bad += bool(value)
        results.append((f"pluecker {shape}", bad == 0, f"{count - bad}/{count} zero"))
    R4 = PolyRing(["x", "y", "z", "w"])
    N = PolyMatrix.from_strings(R4, [[1, 0, 1, 1], [0, 1, 1, 2]])
    results.append(("pluecker hand instance", not pluecker_sum(N, [], [], [0, 1, 2, 3]), ""))
    return results


def random_linear(rng, ring, sparsity=0.5):
    f = ring.zero
    for v in ring.gens:
        if rng.random() < sparsity:
            f = f + v.scale(rng.randint(-3, 3))
    return f


def random_symmetric_pair(rng, ring, n):
    """(S | I) with S a symmetric matrix of linear forms."""
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = random_linear(rng, ring)
    ident = PolyMatrix.identity(ring, n)
    return PolyMatrix(ring, rows, n).hstack(ident)


def random_op(rng, ring, n, fault=False):
    kind = rng.randrange(3)
    coeff = rng.choice([ring.const(rng.randint(1, 3)), random_linear(rng, ring, 0.3) + 1])
    i = rng.randrange(1, n + 1)
    if kind == 0 and n > 1:
        j = rng.choice([k for k in range(1, n + 1) if k != i])
        op = paired_op(ring, n, i, j, coeff)
        if fault:
            op.matrix.rows[j - 1][n + i - 1] = ring.zero
        return op
    if kind == 1:
        return alpha_plus_beta(ring, n, i, coeff)
    return beta_plus_alpha(ring, n, i, coeff)


def suite_symplectic(count, seed, fault=False, steps=4, check_fitting=True):
    ring = PolyRing(["x", "y", "z", "w"])
    rng = random.Random(seed)
    ok_sym = ok_pair = ok_fit = True
    for k in range(count):
        n = rng.choice([1, 2, 2, 3])
        M = random_symmetric_pair(rng, ring, n)
        M0 = M
        E = BaseChange.identity(ring, 2 * n)
        for _ in range(steps):
            op = random_op(rng, ring, n, fault=fault and k == 0)
            ok_sym &= is_symplectic(op.matrix)
            M = M @ op.matrix
            E = E.then(op)
            ok_pair &= is_split_symmetric(M)
        ok_sym &= is_symplectic(E.matrix)
        if check_fitting:
            F0, F1 = fitting_ideal(M0), fitting_ideal(M)
            ok_fit &= F0.is_subset(F1) and F1.is_subset(F0)
    return [
        ("symplectic: E^T J' E = J'", ok_sym, ""),
        ("symplectic: alpha beta^T = beta alpha^T after every step", ok_pair, ""),
        ("symplectic: Fitt_0 unchanged", ok_fit, ""),
    ]


def suite_oracle(names=None):
    results = []
    for name in names or fixtures.resolution_fixtures():
        res = problem_from_dict(fixtures.get(name)).resolution()
        be = check_acyclic_minimal(res).acyclic
        tr = truncated_exactness(res, D=6)
        if tr is None:
            results.append((f"oracle {name}", True, "no small grading; skipped"))
            continue
        results.append((f"oracle {name}", be == tr.exact, f"BE={be} truncated={tr.exact}"))
    return results


def run_selftest(quick=False, seed=0, inject_fault=False):
    t0 = time.time()
    count = 10 if quick else 100
    results = []
    results += suite_pluecker(count, seed, fault=inject_fault)
    results += suite_symplectic(count // 2 if quick else count, seed, fault=inject_fault)
    results += suite_oracle(["E1", "E3", "degenerate"] if quick else None)
    return results, time.time() - t0
