"""Dense matrices over a PolyRing.

Covers determinants, minors, Fitting ideals, rank, the Plücker sums used to
justify the good-minor descent, and the symplectic column operations on
split matrices (alpha | beta).
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import _kernels
from .errors import (
    EmptyMatrix,
    NotSquare,
    ParameterViolation,
    RingMismatch,
    ShapeMismatch,
    SymmetryBroken,
)
from .groebner import Ideal

PROBE_PRIME = 2**31 - 1


class PolyMatrix:
    """Row-major grid of Poly.  Zero-row and zero-column shapes are allowed."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, ncols=None):
        rows = [[ring.coerce(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged matrix rows")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # -- construction ----------------------------------------------------
    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_strings(cls, ring, rows, ncols=None):
        return cls(ring, [[ring.coerce(x) for x in r] for r in rows], ncols)

    @classmethod
    def from_columns(cls, ring, cols, nrows):
        return cls(ring, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    def to_strings(self):
        return [[str(x) for x in r] for r in self.rows]

    # -- access ----------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return list(self.rows[i])

    def col(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def submatrix(self, rows, cols):
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def select_columns(self, cols):
        return self.submatrix(range(self.nrows), cols)

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"

    # -- arithmetic ------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")

    def transpose(self):
        return PolyMatrix(self.ring, [self.col(j) for j in range(self.ncols)], self.nrows)

    T = property(transpose)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.coerce(c)
        return PolyMatrix(self.ring, [[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                s = zero
                for k, a in enumerate(r):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return PolyMatrix(self.ring, out, other.ncols)

    __mul__ = __matmul__

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ShapeMismatch("hstack needs equal row counts")
        return PolyMatrix(self.ring, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ShapeMismatch("vstack needs equal column counts")
        return PolyMatrix(self.ring, self.rows + other.rows, self.ncols)

    def map(self, fn):
        return PolyMatrix(self.ring, [[fn(a) for a in r] for r in self.rows], self.ncols)

    def evaluate(self, point):
        return [[a.evaluate(point) for a in r] for r in self.rows]

    def split(self):
        """(alpha, beta) halves of an n x 2n matrix."""
        n = self.nrows
        if self.ncols != 2 * n:
            raise ShapeMismatch(f"expected an n x 2n matrix, got {self.shape}")
        return self.select_columns(range(n)), self.select_columns(range(n, 2 * n))

    def is_constant(self):
        return all(a.is_constant() for r in self.rows for a in r)


# ---------------------------------------------------------------------------
# determinants and minors


def _det_cofactor(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det_cofactor(sub, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows, ring):
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(M):
    if not M.is_square():
        raise NotSquare(f"determinant of a {M.shape} matrix")
    if M.nrows <= 3:
        return _det_cofactor(M.rows, M.ring)
    return _det_bareiss(M.rows, M.ring)


def colex(n, k):
    """k-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda c: c[::-1])


def minor(M, rows, cols):
    return determinant(M.submatrix(rows, cols))


def minors(M, k):
    """All k x k minors as (rows, cols, value), column sets in colex order."""
    out = []
    for rs in colex(M.nrows, k):
        for cs in colex(M.ncols, k):
            out.append((rs, cs, minor(M, rs, cs)))
    return out


def maximal_minors(M):
    """Dict col-tuple -> minor for an n x m matrix with n <= m (colex order)."""
    n = M.nrows
    return {cs: minor(M, range(n), cs) for cs in colex(M.ncols, n)}


def ideal_of_minors(M, k):
    ring = M.ring
    if k <= 0:
        return Ideal(ring, [ring.one])
    if k > min(M.nrows, M.ncols):
        return Ideal(ring, [])
    gens, seen = [], set()
    for _, _, m in minors(M, k):
        if m:
            key = m.monic()
            if key not in seen:
                seen.add(key)
                gens.append(m)
    return Ideal(ring, gens)


def fitting_ideal(M, k=0):
    """Ideal of (rows - k)-minors; a zero-row matrix gives the unit ideal."""
    if k < 0:
        raise ParameterViolation("Fitting index must be non-negative")
    return ideal_of_minors(M, M.nrows - k)


def erase_first_row(phi):
    if phi.nrows == 0:
        raise EmptyMatrix("no row to erase")
    return PolyMatrix(phi.ring, phi.rows[1:], phi.ncols)


# ---------------------------------------------------------------------------
# rank


def _coeff_mod(c, p):
    if isinstance(c, Fraction):
        den = c.denominator % p
        if den == 0:
            raise ZeroDivisionError
        return c.numerator * pow(den, p - 2, p) % p
    return int(c) % p


def eval_mod(f, point, p):
    total = 0
    for e, c in f.terms.items():
        t = _coeff_mod(c, p)
        for x, k in zip(point, e):
            if k:
                t = t * pow(x, k, p) % p
        total = (total + t) % p
    return total


def _probe_prime(ring):
    char = ring.field.characteristic
    if char == 0:
        return PROBE_PRIME
    return char if char < _kernels.MAX_MODULUS else None


def probe_rank(M, trials=3, rng=None):
    """Max rank of M evaluated at random points mod p (a lower bound)."""
    p = _probe_prime(M.ring)
    if p is None or 0 in M.shape:
        return 0
    rng = rng or random.Random(0)
    best = 0
    for _ in range(trials):
        pt = [rng.randrange(p) for _ in range(M.ring.nvars)]
        try:
            vals = [[eval_mod(a, pt, p) for a in r] for r in M.rows]
        except ZeroDivisionError:
            continue
        best = max(best, _kernels.rank_mod_p(vals, p))
    return best


def _has_nonzero_minor(M, k):
    if k == 0:
        return True
    for rs in colex(M.nrows, k):
        for cs in colex(M.ncols, k):
            if minor(M, rs, cs):
                return True
    return False


def rank(M, rng=None):
    """Exact rank: a probe gives a candidate, minors confirm it."""
    r = probe_rank(M, rng=rng)
    while r > 0 and not _has_nonzero_minor(M, r):
        r -= 1
    top = min(M.nrows, M.ncols)
    while r < top and _has_nonzero_minor(M, r + 1):
        r += 1
    return r


# ---------------------------------------------------------------------------
# Plücker relations


def permutation_sign(seq):
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = seq[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _col_minor(M, cols):
    return determinant(M.select_columns(cols))


def pluecker_sum(M, a_cols, b_cols, c_cols):
    """Signed sum of products of maximal minors that vanishes identically.

    Column indices are 0-based.  With m = nrows, p = len(a), q = m + 1 - len(b),
    s = len(c), t = m - p: requires s = m - p + q - 1 > m and t > 0.
    """
    m = M.nrows
    p = len(a_cols)
    q = m + 1 - len(b_cols)
    s = len(c_cols)
    t = m - p
    if s != m - p + q - 1:
        raise ParameterViolation(f"need len(c) = {m - p + q - 1}, got {s}")
    if s <= m or t <= 0:
        raise ParameterViolation(f"need s > {m} and t > 0 (s={s}, t={t})")
    for j in list(a_cols) + list(b_cols) + list(c_cols):
        if not 0 <= j < M.ncols:
            raise ParameterViolation(f"column {j} out of range")
    total = M.ring.zero
    cache = {}

    def mm(cols):
        if len(set(cols)) < len(cols):
            return M.ring.zero
        if cols not in cache:
            cache[cols] = _col_minor(M, cols)
        return cache[cols]

    for head in combinations(range(s), t):
        tail = tuple(i for i in range(s) if i not in head)
        sign = permutation_sign(head + tail)
        left = mm(tuple(a_cols) + tuple(c_cols[i] for i in head))
        if not left:
            continue
        right = mm(tuple(c_cols[i] for i in tail) + tuple(b_cols))
        if right:
            term = left * right
            total = total + term if sign > 0 else total - term
    return total


# ---------------------------------------------------------------------------
# split minors and base changes


@dataclass(frozen=True)
class MinorIndex:
    """An n-minor of (alpha | beta) by 1-based alpha and beta column sets."""

    alpha_cols: tuple
    beta_cols: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha_cols", tuple(sorted(self.alpha_cols)))
        object.__setattr__(self, "beta_cols", tuple(sorted(self.beta_cols)))

    @classmethod
    def from_columns(cls, cols, n):
        """From 0-based columns of the n x 2n matrix."""
        return cls(tuple(c + 1 for c in cols if c < n), tuple(c - n + 1 for c in cols if c >= n))

    def columns(self, n):
        return tuple(a - 1 for a in self.alpha_cols) + tuple(n + b - 1 for b in self.beta_cols)

    @property
    def overlap(self):
        return set(self.alpha_cols) & set(self.beta_cols)

    @property
    def is_good(self):
        return not self.overlap

    def value(self, M):
        return _col_minor(M, self.columns(M.nrows))

    def __str__(self):
        return f"[{','.join(map(str, self.alpha_cols))};{','.join(map(str, self.beta_cols))}]"


def symplectic_form(ring, n):
    """J' = ((0, I), (-I, 0))."""
    rows = [[ring.zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = ring.one
        rows[n + i][i] = -ring.one
    return PolyMatrix(ring, rows, 2 * n)


def is_symplectic(E):
    n2 = E.nrows
    if n2 % 2 or not E.is_square():
        return False
    J = symplectic_form(E.ring, n2 // 2)
    return E.T @ J @ E == J


def is_split_symmetric(M):
    """alpha beta^T == beta alpha^T, i.e. M J' M^T == 0."""
    n = M.nrows
    if M.ncols != 2 * n:
        raise ShapeMismatch(f"expected an n x 2n matrix, got {M.shape}")
    return (M @ symplectic_form(M.ring, n) @ M.T).is_zero()


@dataclass
class BaseChange:
    """Invertible change of basis E on A^(2n), applied as M -> M E."""

    matrix: PolyMatrix
    log: list = field(default_factory=list)
    symplectic: bool = True

    @classmethod
    def identity(cls, ring, size, symplectic=True):
        return cls(PolyMatrix.identity(ring, size), [], symplectic)

    @property
    def size(self):
        return self.matrix.nrows

    def then(self, other):
        """First self, then other."""
        return BaseChange(self.matrix @ other.matrix, self.log + other.log, self.symplectic and other.symplectic)

    def is_identity(self):
        return self.matrix == PolyMatrix.identity(self.matrix.ring, self.size)

    def check(self):
        d = determinant(self.matrix)
        if not d or not d.is_constant():
            return False
        return not self.symplectic or is_symplectic(self.matrix)


def _elementary(ring, size, entries, record, symplectic):
    E = PolyMatrix.identity(ring, size)
    for (i, j), v in entries.items():
        E.rows[i][j] = E.rows[i][j] + ring.coerce(v)
    return BaseChange(E, [record], symplectic)


def column_op(ring, size, y, l, b):
    """M_{y,l}(b): add b times column l to column y (1-based)."""
    if y == l:
        raise ParameterViolation("column op needs distinct columns")
    b = ring.coerce(b)
    return _elementary(ring, size, {(l - 1, y - 1): b},
                       {"kind": "add_column", "target": y, "source": l, "b": str(b)}, False)


def paired_op(ring, n, H, L, zeta=1):
    """beta_L += zeta alpha_H and beta_H += zeta alpha_L (1-based)."""
    zeta = ring.coerce(zeta)
    if H == L:
        ent = {(H - 1, n + H - 1): 2 * zeta}
    else:
        ent = {(H - 1, n + L - 1): zeta, (L - 1, n + H - 1): zeta}
    return _elementary(ring, 2 * n, ent, {"kind": "paired", "H": H, "L": L, "zeta": str(zeta)}, True)


def alpha_plus_beta(ring, n, j, b):
    """alpha_j += b beta_j (1-based)."""
    b = ring.coerce(b)
    return _elementary(ring, 2 * n, {(n + j - 1, j - 1): b},
                       {"kind": "alpha_plus_beta", "j": j, "b": str(b)}, True)


def beta_plus_alpha(ring, n, j, b):
    """beta_j += b alpha_j (1-based)."""
    b = ring.coerce(b)
    return _elementary(ring, 2 * n, {(j - 1, n + j - 1): b},
                       {"kind": "beta_plus_alpha", "j": j, "b": str(b)}, True)


def apply_base_change(M, E):
    """M E, asserting the split symmetry survives when E is symplectic."""
    if M.ncols != E.size:
        raise ShapeMismatch(f"matrix with {M.ncols} columns against a {E.size}-dim base change")
    if E.symplectic and M.ncols == 2 * M.nrows:
        if not is_split_symmetric(M):
            raise SymmetryBroken("input matrix is not split-symmetric")
        out = M @ E.matrix
        if not is_split_symmetric(out):
            raise SymmetryBroken(f"base change broke the symmetry: {E.log}")
        return out
    return M @ E.matrix
