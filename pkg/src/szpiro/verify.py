"""Independent re-checking of emitted reports.

Every claim is re-derived from the problem matrices stored in the report,
using arithmetic identities, normal forms against freshly computed bases (in
lex order where an order matters) and coprimality through ideal quotients
rather than polynomial gcds.
"""

import math

from .groebner import Ideal, Submodule, dimension_and_depth
from .io import matrix_from_json, problem_from_dict
from .polymat import (
    PolyMatrix,
    _det_cofactor,
    colex,
    is_split_symmetric,
    is_symplectic,
    symplectic_form,
)


def coprime_by_quotient(f, g):
    """g is a nonzerodivisor modulo f (f nonzero): ((f) : g) = (f)."""
    if not f:
        return False
    J = Ideal(f.ring, [f])
    return J.quotient(g).is_subset(J)


def _lex_ideal(I):
    ring = I.ring.with_order("lex")
    return Ideal(ring, [ring.coerce(str(g)) for g in I.generators])


def _lex_depth(gens, ring):
    lring = ring.with_order("lex")
    return dimension_and_depth(Ideal(lring, [lring.coerce(str(g)) for g in gens]))[1]


def _minors_ideal(M, k):
    ring = M.ring
    if k <= 0:
        return [ring.one]
    out = []
    for rs in colex(M.nrows, k):
        for cs in colex(M.ncols, k):
            m = _det_cofactor(M.submatrix(rs, cs).rows, ring)
            if m:
                out.append(m)
    return out


def _depth_val(v):
    return math.inf if v == "inf" else v


class Checker:
    def __init__(self):
        self.checks = []

    def __call__(self, name, ok, detail=""):
        self.checks.append({"check": name, "ok": bool(ok), "detail": detail})
        return ok

    @property
    def failures(self):
        return [c for c in self.checks if not c["ok"]]


def _check_table(chk, ring, phi, table):
    n = phi.nrows
    im = Submodule(ring, n, phi.columns())
    d = ring.coerce(table["d"])
    a = [ring.coerce(s) for s in table["a"]]
    c = [[[ring.coerce(s) for s in v] for v in row] for row in table["c"]]
    wit = table.get("witnesses", {})

    def unit(k, s):
        v = [ring.zero] * n
        v[k] = s
        return v

    def member(name, vec, w=None):
        if w is not None:
            coeffs = [ring.coerce(s) for s in w]
            image = [sum((phi[r, j] * coeffs[j] for j in range(phi.ncols)), ring.zero) for r in range(n)]
            chk(name + " (witness)", image == list(vec))
        chk(name, im.contains(vec))

    for i in range(n):
        diff = [x - y for x, y in zip(unit(i, d), unit(0, a[i]))]
        member(f"d e_{i + 1} - a_{i + 1} e_1 in im(phi)", diff, (wit.get("a") or [None] * n)[i])
    d2 = d * d
    for i in range(n):
        for j in range(n):
            lhs = unit(0, a[i] * a[j])
            diff = [x - d2 * y for x, y in zip(lhs, c[i][j])]
            w = wit.get("c", {}).get(f"{i + 1},{j + 1}")
            member(f"a_{i + 1} a_{j + 1} e_1 - d^2 c_{i + 1}{j + 1} in im(phi)", diff, w)
            member(f"c_{i + 1}{j + 1} = c_{j + 1}{i + 1}", [x - y for x, y in zip(c[i][j], c[j][i])])
    for j in range(n):
        member(f"c_1{j + 1} = e_{j + 1}", [x - y for x, y in zip(c[0][j], unit(j, ring.one))])

    def mul(u, v):
        out = [ring.zero] * n
        for i in range(n):
            for j in range(n):
                if u[i] and v[j]:
                    for k in range(n):
                        out[k] = out[k] + u[i] * v[j] * c[i][j][k]
        return out

    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = mul(c[i][j], unit(k, ring.one))
                right = mul(unit(i, ring.one), c[j][k])
                member(f"associativity ({i + 1},{j + 1},{k + 1})", [x - y for x, y in zip(left, right)])


def _check_diagnose(chk, prob, rep):
    ring, phi = prob.ring, prob.phi
    stages = rep["stages"]
    acyc = stages.get("acyclicity")
    res = prob.resolution()
    chk("phi psi = 0", (res.phi @ res.psi).is_zero())
    if acyc:
        for key, M in (("I(phi)", res.phi), ("I(psi)", res.psi)):
            r = acyc["ranks"]["phi" if key == "I(phi)" else "psi"]
            gens = _minors_ideal(M, r)
            chk(f"rank {key} has a nonzero minor", r == 0 or bool(gens))
            higher = _minors_ideal(M, r + 1) if r < min(M.shape) else []
            chk(f"rank {key}: all larger minors vanish", not higher)
            chk(f"depth {key} (lex)", _lex_depth(gens, ring) == _depth_val(acyc["depths"][key]))
    heart = stages.get("heart_check")
    if heart:
        gens = [ring.coerce(s) for s in heart["I_prime"]]
        phi1 = PolyMatrix(ring, phi.rows[1:], phi.ncols)
        recomputed = _minors_ideal(phi1, phi1.nrows)
        I1 = Ideal(ring, gens)
        I2 = Ideal(ring, recomputed)
        chk("I' matches the minors of phi'", I1.is_subset(I2) and I2.is_subset(I1))
        chk("depth I' (lex)", _lex_depth(gens, ring) == _depth_val(heart["depth"]))
    sym = stages.get("symmetry", {})
    if phi.ncols == 2 * phi.nrows and not sym.get("symmetrized"):
        chk("symmetry verdict", is_split_symmetric(phi) == sym.get("symmetric", False))
    kz = stages.get("koszul")
    if kz:
        if sym.get("symmetrized"):
            alpha = matrix_from_json(ring, sym["alpha"])
            beta = matrix_from_json(ring, sym["beta"])
        else:
            n = phi.nrows
            alpha = phi.select_columns(range(n))
            beta = phi.select_columns(range(n, 2 * n))
        da = _det_cofactor(alpha.rows, ring)
        db = _det_cofactor(beta.rows, ring)
        chk("det alpha", da == ring.coerce(kz["det_alpha"]))
        chk("det beta", db == ring.coerce(kz["det_beta"]))
        chk("Koszul regular-sequence verdict", coprime_by_quotient(da, db) == kz["regular_sequence"])
    table = stages.get("ring", {}).get("table")
    if table and "axioms" in stages.get("ring", {}):
        _check_table(chk, ring, phi, table)


def _check_regularize(chk, prob, rep):
    ring, phi = prob.ring, prob.phi
    E = matrix_from_json(ring, rep["base_change"])
    det = _det_cofactor(E.rows, ring) if E.nrows <= 6 else None
    if det is not None:
        chk("base change has constant nonzero determinant", bool(det) and det.is_constant())
    if rep.get("symplectic"):
        chk("E^T J' E = J'", is_symplectic(E))
    M = matrix_from_json(ring, rep["matrix"])
    chk("phi E equals the reported matrix", phi @ E == M)
    if rep.get("symplectic"):
        chk("transformed matrix is split-symmetric", is_split_symmetric(M))
    n = M.nrows
    da = _det_cofactor(M.select_columns(range(n)).rows, ring)
    chk("det alpha", da == ring.coerce(rep["det_alpha"]))
    if rep.get("det_beta") is not None:
        db = _det_cofactor(M.select_columns(range(n, 2 * n)).rows, ring)
        chk("det beta", db == ring.coerce(rep["det_beta"]))
        if rep["verified"]:
            chk("det alpha, det beta regular sequence (quotient)", coprime_by_quotient(da, db))
        elif rep.get("gcd") is not None:
            g = ring.coerce(rep["gcd"])
            chk("reported gcd divides both determinants",
                not g.is_constant() and g.divides(da) and g.divides(db))
            chk("pair is not a regular sequence (quotient)", not coprime_by_quotient(da, db))
    else:
        chk("det tau1 nonzero", bool(da) == rep["verified"])


def _check_symmetrize(chk, prob, rep):
    ring, phi = prob.ring, prob.phi
    B = matrix_from_json(ring, rep["B"])
    S = matrix_from_json(ring, rep["skew"])
    m = B.nrows
    chk("S is skew", S.T == -S)
    chk("B^T S B = J", B.T @ S @ B == symplectic_form(ring, m // 2))
    alpha = matrix_from_json(ring, rep["alpha"])
    beta = matrix_from_json(ring, rep["beta"])
    new = alpha.hstack(beta)
    chk("phi B equals (alpha | beta)", phi @ B == new)
    chk("alpha beta^T = beta alpha^T", alpha @ beta.T == beta @ alpha.T)
    psi_new = (-beta.T).vstack(alpha.T)
    chk("phi_new psi_new = 0", (new @ psi_new).is_zero())
    im_old = Submodule(ring, phi.nrows, phi.columns())
    im_new = Submodule(ring, new.nrows, new.columns())
    chk("coker(phi_new) = coker(phi)", im_old.is_subset(im_new) and im_new.is_subset(im_old))


def verify_report(rep):
    """Re-check a report dict; returns the list of checks performed."""
    chk = Checker()
    kind = rep.get("kind")
    prob = problem_from_dict(rep["problem"])
    if kind == "diagnose":
        _check_diagnose(chk, prob, rep["report"])
    elif kind == "ring":
        if rep.get("table") is not None:
            _check_table(chk, prob.ring, prob.phi, rep["table"])
    elif kind == "regularize":
        if rep.get("report") is not None:
            _check_regularize(chk, prob, rep["report"])
    elif kind == "symmetrize":
        if rep.get("result") is not None:
            _check_symmetrize(chk, prob, rep["result"])
    else:
        chk("known report kind", False, f"unknown kind {kind!r}")
    return chk.checks
