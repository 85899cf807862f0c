"""Length-two free resolutions 0 -> F2 -psi-> F1 -phi-> F0 and their checks.

A resolution is *symmetric* when phi = (alpha | beta) and psi stacks
(-beta^T ; alpha^T), which is the same as alpha beta^T = beta alpha^T.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    CharTwo,
    ComplexNotZero,
    EmptyMatrix,
    InhomogeneousEntry,
    NotAnIsomorphism,
    NotSkew,
    NotSquare,
    NotUnimodular,
    NoUnitPivot,
    ShapeMismatch,
    SkewDegenerate,
    SymmetrizeFailed,
)
from .groebner import Submodule, annihilator_of_cokernel, dimension_and_depth
from .poly import gcd, is_unit
from .polymat import (
    BaseChange,
    PolyMatrix,
    determinant,
    erase_first_row,
    fitting_ideal,
    ideal_of_minors,
    is_split_symmetric,
    rank,
)


@dataclass
class GradedData:
    """Generator degrees of F0 (q), F1 (r) and F2 (s) under variable weights."""

    q_degrees: list
    r_degrees: list
    s_degrees: list
    twist: Optional[int] = None
    weights: Optional[list] = None

    def to_dict(self):
        d = {"q_degrees": self.q_degrees, "r_degrees": self.r_degrees, "s_degrees": self.s_degrees}
        if self.weights is not None:
            d["weights"] = self.weights
        if self.twist is not None:
            d["twist"] = self.twist
        return d

    def dual(self):
        return GradedData([-s for s in self.s_degrees], [-r for r in self.r_degrees],
                          [-q for q in self.q_degrees], None, self.weights)


class FreeResolution:
    def __init__(self, ring, phi, psi, grading=None):
        if phi.ring != ring or psi.ring != ring:
            raise ShapeMismatch("matrices are not over the resolution's ring")
        if phi.ncols != psi.nrows:
            raise ShapeMismatch(f"phi has {phi.ncols} columns but psi has {psi.nrows} rows")
        self.ring = ring
        self.phi = phi
        self.psi = psi
        self.grading = grading

    @property
    def n0(self):
        return self.phi.nrows

    @property
    def n1(self):
        return self.phi.ncols

    @property
    def n2(self):
        return self.psi.ncols

    def is_complex(self):
        return (self.phi @ self.psi).is_zero()

    def __repr__(self):
        return f"FreeResolution(ranks=({self.n0}, {self.n1}, {self.n2}))"


class SymmetricResolution:
    def __init__(self, alpha, beta, grading=None):
        if alpha.shape != beta.shape or not alpha.is_square():
            raise ShapeMismatch("alpha and beta must be square of the same size")
        self.ring = alpha.ring
        self.n = alpha.nrows
        self.alpha = alpha
        self.beta = beta
        phi = alpha.hstack(beta)
        psi = (-beta.T).vstack(alpha.T)
        self.base = FreeResolution(self.ring, phi, psi, grading)

    @classmethod
    def from_matrix(cls, M, grading=None):
        alpha, beta = M.split()
        return cls(alpha, beta, grading)

    @property
    def phi(self):
        return self.base.phi

    @property
    def psi(self):
        return self.base.psi

    def is_symmetric(self):
        return self.alpha @ self.beta.T == self.beta @ self.alpha.T


@dataclass
class KoszulCertificate:
    det_alpha: object
    det_beta: object
    lambda_unit: object
    regular_sequence: bool
    gcd: object = None
    identities_hold: bool = True

    def to_dict(self):
        return {
            "det_alpha": str(self.det_alpha),
            "det_beta": str(self.det_beta),
            "lambda": None if self.lambda_unit is None else str(self.lambda_unit),
            "gcd": None if self.gcd is None else str(self.gcd),
            "regular_sequence": self.regular_sequence,
            "identities_hold": self.identities_hold,
        }


def _depth_str(d):
    return "inf" if d == math.inf else d


@dataclass
class AcyclicityReport:
    acyclic: bool
    minimal: bool
    codim2: bool
    ranks: dict
    depths: dict
    annihilator: object = field(repr=False, default=None)

    def to_dict(self):
        return {
            "acyclic": self.acyclic,
            "minimal": self.minimal,
            "codim2": self.codim2,
            "ranks": self.ranks,
            "depths": {k: _depth_str(v) for k, v in self.depths.items()},
        }


@dataclass
class HeartReport:
    holds: bool
    depth: object
    I_prime: object = field(repr=False, default=None)

    def to_dict(self):
        return {
            "holds": self.holds,
            "depth": _depth_str(self.depth),
            "I_prime": [str(g) for g in self.I_prime.generators] if self.I_prime is not None else None,
        }


def is_minimal(res):
    return all(not a.constant_term() for M in (res.phi, res.psi) for r in M.rows for a in r)


def check_acyclic_minimal(res):
    """Buchsbaum-Eisenbud criterion plus minimality and the codimension test."""
    if not res.is_complex():
        raise ComplexNotZero("phi * psi is not zero")
    rk_phi = rank(res.phi)
    rk_psi = rank(res.psi)
    d_phi = dimension_and_depth(ideal_of_minors(res.phi, rk_phi))[1]
    d_psi = dimension_and_depth(ideal_of_minors(res.psi, rk_psi))[1]
    acyclic = (rk_psi == res.n2 and rk_phi + rk_psi == res.n1 and d_phi >= 1 and d_psi >= 2)
    ann = annihilator_of_cokernel(res.phi) if res.n0 else None
    d_ann = dimension_and_depth(ann)[1] if ann is not None else math.inf
    return AcyclicityReport(
        acyclic=acyclic,
        minimal=is_minimal(res),
        codim2=d_ann == 2,
        ranks={"phi": rk_phi, "psi": rk_psi},
        depths={"I(phi)": d_phi, "I(psi)": d_psi, "Ann": d_ann},
        annihilator=ann,
    )


def heart_check(phi):
    """depth I' >= 4 where I' is Fitt_0 of phi with its first row erased."""
    if phi.nrows == 0:
        raise EmptyMatrix("heart check needs at least one row")
    I_prime = fitting_ideal(erase_first_row(phi), 0)
    depth = dimension_and_depth(I_prime)[1]
    return HeartReport(holds=depth >= 4, depth=depth, I_prime=I_prime)


def _check_symmetric_shape(res):
    n = res.n0
    if res.n1 != 2 * n or res.n2 != n:
        raise ShapeMismatch(f"ranks {res.n0, res.n1, res.n2} are not of the form (n, 2n, n)")


def locate_symmetry_violation(res):
    """Human-readable location of the first failing entry, or None."""
    _check_symmetric_shape(res)
    alpha, beta = res.phi.split()
    lhs, rhs = alpha @ beta.T, beta @ alpha.T
    n = res.n0
    for i in range(n):
        for j in range(n):
            if lhs[i, j] != rhs[i, j]:
                return (f"(alpha beta^T - beta alpha^T)[{i + 1},{j + 1}] = {lhs[i, j] - rhs[i, j]}")
    expected = (-beta.T).vstack(alpha.T)
    for i in range(2 * n):
        for j in range(n):
            if res.psi[i, j] != expected[i, j]:
                return f"psi[{i + 1},{j + 1}] = {res.psi[i, j]}, expected {expected[i, j]}"
    return None


def symmetry_check(res):
    """The SymmetricResolution view of ``res`` or None when it is not symmetric."""
    if locate_symmetry_violation(res) is not None:
        return None
    return SymmetricResolution.from_matrix(res.phi, res.grading)


def koszul_check(sym):
    n = sym.n
    da = determinant(sym.alpha)
    db = determinant(sym.beta)
    # rho1 = -beta^T, rho2 = alpha^T
    d_rho1 = determinant(-sym.beta.T)
    d_rho2 = determinant(sym.alpha.T)
    sign = 1 if n % 2 == 0 else -1
    lam = None
    ring = sym.ring
    if db:
        q, r = d_rho1.divmod(db.scale(sign))
        if not r and q.is_constant():
            lam = q
    elif da:
        q, r = d_rho2.divmod(da)
        if not r and q.is_constant():
            lam = q
    identities = lam is not None and d_rho1 == db.scale(sign) * lam and d_rho2 == da * lam
    if lam is None and not da and not db:
        lam, identities = ring.one, True
    g = gcd(da, db)
    regular = bool(da) and is_unit(g)
    return KoszulCertificate(da, db, lam, regular and identities, g, identities)


def dualize(res):
    grading = res.grading.dual() if res.grading is not None else None
    return FreeResolution(res.ring, res.psi.T, res.phi.T, grading)


def _entry_degree(f, weights, where):
    if not f:
        return None
    if not f.is_homogeneous(weights):
        raise InhomogeneousEntry(f"entry {where} = {f} is not homogeneous", location=where)
    return f.weighted_degree(weights)


@dataclass
class TwistReport:
    homogeneous: bool
    twist: Optional[int]
    candidates: list = field(default_factory=list)

    def to_dict(self):
        return {"homogeneous": self.homogeneous, "twist": self.twist}


def graded_twist_check(res):
    """Check entry degrees against the grading and infer the twist t.

    t must satisfy r_k + r_{n+k} = t and s_j + q_j = t for every k, j.
    """
    g = res.grading
    if g is None:
        raise ShapeMismatch("no grading data attached")
    q, r, s = list(g.q_degrees), list(g.r_degrees), list(g.s_degrees)
    if len(q) != res.n0 or len(r) != res.n1 or len(s) != res.n2:
        raise ShapeMismatch("grading lengths do not match the ranks")
    w = g.weights
    for i in range(res.n0):
        for k in range(res.n1):
            d = _entry_degree(res.phi[i, k], w, f"phi[{i + 1},{k + 1}]")
            if d is not None and d != r[k] - q[i]:
                raise InhomogeneousEntry(
                    f"phi[{i + 1},{k + 1}] has degree {d}, expected {r[k] - q[i]}",
                    location=f"phi[{i + 1},{k + 1}]")
    for k in range(res.n1):
        for l in range(res.n2):
            d = _entry_degree(res.psi[k, l], w, f"psi[{k + 1},{l + 1}]")
            if d is not None and d != s[l] - r[k]:
                raise InhomogeneousEntry(
                    f"psi[{k + 1},{l + 1}] has degree {d}, expected {s[l] - r[k]}",
                    location=f"psi[{k + 1},{l + 1}]")
    n = res.n0
    if res.n1 != 2 * n or res.n2 != n or n == 0:
        return TwistReport(True, None, [])
    sums = [r[k] + r[n + k] for k in range(n)] + [s[j] + q[j] for j in range(n)]
    candidates = [t for t in range(min(sums), max(sums) + 1) if all(x == t for x in sums)]
    twist = candidates[0] if len(candidates) == 1 else None
    return TwistReport(True, twist, candidates)


# ---------------------------------------------------------------------------
# skew normal form and symmetrization


def skew_normal_form(S):
    """B with B^T S B = J for a skew S of constant nonzero determinant."""
    if not S.is_square():
        raise NotSquare("skew form must be square")
    m = S.nrows
    if m % 2:
        raise NotSkew("skew form of odd size")
    if S.T != -S:
        raise NotSkew("S^T != -S")
    ring = S.ring
    d = determinant(S)
    if not d or not d.is_constant():
        raise NotUnimodular(f"det S = {d} is not a nonzero constant")

    def omega(u, v):
        total = ring.zero
        for i in range(m):
            if not u[i]:
                continue
            for j in range(m):
                if v[j] and S[i, j]:
                    total = total + u[i] * S[i, j] * v[j]
        return total

    basis = [[ring.one if i == j else ring.zero for i in range(m)] for j in range(m)]
    es, fs = [], []
    while basis:
        pivot = None
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                w = omega(basis[i], basis[j])
                if w and w.is_constant():
                    pivot = (i, j, w)
                    break
            if pivot:
                break
        if pivot is None:
            raise NoUnitPivot("no pair with a unit pairing among the remaining vectors")
        i, j, w = pivot
        inv = ring.field.inv(w.constant_term())
        e = basis[i]
        f = [x.scale(inv) for x in basis[j]]
        rest = [v for k, v in enumerate(basis) if k not in (i, j)]
        basis = []
        for v in rest:
            a, b = omega(v, f), omega(v, e)
            basis.append([v[k] - a * e[k] + b * f[k] for k in range(m)])
        es.append(e)
        fs.append(f)
    B = PolyMatrix.from_columns(ring, es + fs, m)
    return BaseChange(B, [{"kind": "skew_normal_form"}], symplectic=False)


def _lift_columns(module, M, what):
    """Columns c of a matrix X with module_gens @ X = M, or raise."""
    cols = []
    for j in range(M.ncols):
        c = module.lift(M.col(j))
        if c is None:
            raise SymmetrizeFailed(f"cannot lift column {j + 1} of {what}")
        cols.append(c)
    return cols


def verify_isomorphism(res, u):
    """Check that u induces an isomorphism coker(phi) -> coker(psi^T).

    Returns the inverse v (n0 x n2) modulo images, or raises NotAnIsomorphism.
    """
    ring = res.ring
    n0, n2 = res.n0, res.n2
    if u.shape != (n2, n0):
        raise ShapeMismatch(f"u must be {n2} x {n0}, got {u.shape}")
    im_phi = Submodule(ring, n0, res.phi.columns())
    psiT = res.psi.T
    im_psiT = Submodule(ring, n2, psiT.columns())
    up = u @ res.phi
    for j in range(up.ncols):
        if not im_psiT.contains(up.col(j)):
            raise NotAnIsomorphism(f"u does not map column {j + 1} of phi into im(psi^T)")
    target = Submodule(ring, n2, u.columns() + psiT.columns())
    v_cols = []
    for j in range(n2):
        e = [ring.one if i == j else ring.zero for i in range(n2)]
        c = target.lift(e)
        if c is None:
            raise NotAnIsomorphism(f"e_{j + 1} is not in the image of u")
        v_cols.append(c[:n0])
    v = PolyMatrix.from_columns(ring, v_cols, n0)
    vp = v @ psiT
    for j in range(vp.ncols):
        if not im_phi.contains(vp.col(j)):
            raise NotAnIsomorphism("the inverse of u is not well defined")
    vu = v @ u - PolyMatrix.identity(ring, n0)
    for j in range(vu.ncols):
        if not im_phi.contains(vu.col(j)):
            raise NotAnIsomorphism("u is not injective on the cokernel")
    return v


@dataclass
class SymmetrizeResult:
    resolution: SymmetricResolution
    B: BaseChange
    f2: PolyMatrix
    f3: PolyMatrix
    skew: PolyMatrix


def symmetrize(res, u):
    """Symmetric resolution of coker(phi) from a duality isomorphism u."""
    ring = res.ring
    if ring.field.characteristic == 2:
        raise CharTwo("symmetrization divides by 2")
    if res.n1 != 2 * res.n0 or res.n2 != res.n0:
        raise ShapeMismatch("ranks must be (n, 2n, n)")
    if not res.is_complex():
        raise ComplexNotZero("phi * psi is not zero")
    verify_isomorphism(res, u)
    n1 = res.n1
    psiT = res.psi.T
    im_psiT = Submodule(ring, res.n2, psiT.columns())
    f2 = PolyMatrix.from_columns(ring, _lift_columns(im_psiT, u @ res.phi, "u phi"), n1)
    im_phiT = Submodule(ring, n1, res.phi.T.columns())
    f3 = PolyMatrix.from_columns(ring, _lift_columns(im_phiT, f2 @ res.psi, "f2 psi"), res.n0)
    S = (f2 - f2.T).scale(ring.field.inv(2))
    try:
        B = skew_normal_form(S)
    except NotUnimodular as exc:
        raise SkewDegenerate(str(exc)) from exc
    phi_new = res.phi @ B.matrix
    if not is_split_symmetric(phi_new):
        raise SymmetrizeFailed("phi B is not split-symmetric")
    sym = SymmetricResolution.from_matrix(phi_new)
    if not sym.base.is_complex():
        raise SymmetrizeFailed("new complex does not compose to zero")
    return SymmetrizeResult(sym, B, f2, f3, S)
