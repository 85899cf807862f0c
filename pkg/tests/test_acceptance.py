"""The ten acceptance criteria, one test each.

Each test records a PASS/FAIL line that is printed in the terminal summary;
running this file as a script prints the same lines without pytest.
"""

import json
import random
import sys

import pytest
import sympy

from conftest import ACCEPTANCE, load
from szpiro import fixtures
from szpiro.cli import run_diagnose, run_regularize, run_ring, run_symmetrize
from szpiro.errors import NotClosed, VerificationFailed
from szpiro.exactness import truncated_exactness
from szpiro.poly import gcd, is_unit
from szpiro.polymat import PolyMatrix, determinant, symplectic_form
from szpiro.regularizer import regularize_symmetric, regularize_tau1
from szpiro.resolution import (
    FreeResolution,
    SymmetricResolution,
    check_acyclic_minimal,
    heart_check,
    koszul_check,
    skew_normal_form,
    symmetrize,
    symmetry_check,
)
from szpiro.ring_builder import build_multiplication, gorenstein_diagnose, verify_ring_axioms
from szpiro.selftest import random_op, suite_pluecker, suite_symplectic
from szpiro.verify import verify_report


def record(k, checks):
    """checks: list of (label, bool).  Stores the line and asserts."""
    failed = [label for label, ok in checks if not ok]
    detail = "all of: " + ", ".join(label for label, _ in checks) if not failed else "failed: " + ", ".join(failed)
    ACCEPTANCE[k] = (not failed, detail)
    print(f"criterion {k}: {'PASS' if not failed else 'FAIL'}  {detail}")
    assert not failed, detail


def test_criterion_01_koszul_fixture():
    prob = load("E1")
    rep = gorenstein_diagnose(prob.resolution(), u=prob.u)
    st = rep["stages"]
    R = prob.ring
    c = st["ring"]["table"]["c"]
    record(1, [
        ("certified", rep["certified"]),
        ("acyclic", st["acyclicity"]["acyclic"]),
        ("minimal", st["acyclicity"]["minimal"]),
        ("codim 2", st["acyclicity"]["codim2"]),
        ("heart by convention", st["heart_check"]["holds"] and st["heart_check"]["depth"] == "inf"),
        ("symmetric", st["symmetry"]["symmetric"]),
        ("Koszul pair (x, y)", st["koszul"]["regular_sequence"]
         and (R.coerce(st["koszul"]["det_alpha"]), R.coerce(st["koszul"]["det_beta"])) == (R.coerce("x"), R.coerce("y"))),
        ("e.e = e", c == [[["1"]]]),
        ("twist 2", st["graded"]["twist"] == 2),
    ])


s_, t_ = sympy.symbols("s t")
CUSP = {"x": s_, "y": t_**2, "z": t_**3, "w": s_ * t_}


def _subst(f):
    return sympy.expand(sympy.sympify(str(f).replace("^", "**"), locals=CUSP).subs(CUSP))


def test_criterion_02_cusp_surface():
    prob = load("E2")
    R = prob.ring
    heart = heart_check(prob.phi)
    out, code = run_ring(prob)
    table = build_multiplication(prob.phi)
    gens = [sympy.Integer(1), t_]
    oracle = all(
        sympy.expand(sum(_subst(c) * g for c, g in zip(table.constants[i][j], gens)) - gens[i] * gens[j]) == 0
        for i in range(2) for j in range(2))
    axioms = verify_ring_axioms(table, prob.phi)
    d1 = table.certificate.d
    other = build_multiplication(prob.phi, exclude=[d1])
    from szpiro.groebner import Submodule
    im = Submodule(R, 2, prob.phi.columns())
    same = all(im.contains([a - b for a, b in zip(table.constants[i][j], other.constants[i][j])])
               for i in range(2) for j in range(2))
    record(2, [
        ("heart holds with depth I' = 4", heart.holds and heart.depth == 4),
        ("ring command emits t.t = y.e", code == 0 and out["table"]["c"][1][1] == ["y", "0"]),
        ("substitution oracle in k[s,t]", oracle),
        ("associativity on 8 triples", axioms["associative_triples"] == 8),
        (f"tables agree for d = {d1} and d' = {other.certificate.d}", same and other.certificate.d != d1),
    ])


def test_criterion_03_blowup_fixture():
    prob = load("E3")
    res = prob.resolution()
    sym = symmetry_check(res)
    kz = koszul_check(sym) if sym is not None else None
    heart = heart_check(prob.phi)
    try:
        build_multiplication(prob.phi)
        closed = True
    except NotClosed:
        closed = False
    record(3, [
        ("symmetric", sym is not None),
        ("Koszul", kz is not None and kz.regular_sequence),
        ("heart fails with depth 3", not heart.holds and heart.depth == 3),
        ("NotClosed", not closed),
    ])


def test_criterion_04_pluecker():
    results = suite_pluecker(100, seed=2024)
    record(4, [(f"{name} {detail}".strip(), ok) for name, ok, detail in results])


def test_criterion_05_symplectic_invariance():
    results = suite_symplectic(100, seed=2024)
    record(5, [(name, ok) for name, ok, _ in results])


def test_criterion_06_lemma_regularizer():
    prob = load("lemma")
    R = prob.ring
    rep = regularize_tau1(prob.phi)
    M = prob.phi @ rep.base_change.matrix
    det = determinant(M.select_columns(range(2)))
    step = rep.steps[0] if rep.steps else {}
    record(6, [
        ("det tau1 = x*w", det == R.coerce("x*w") and rep.verified),
        ("l = (3, 1)", step.get("l") == [3, 1]),
    ])


def test_criterion_07_symmetric_regularizer():
    prob = load("diag")
    ok_all = True
    for seed in range(20):
        rng = random.Random(seed)
        phi = prob.phi
        for _ in range(4):
            phi = phi @ random_op(rng, prob.ring, 2).matrix
        rep = regularize_symmetric(SymmetricResolution.from_matrix(phi), seed=seed)
        da = determinant(rep.matrix.select_columns(range(2)))
        db = determinant(rep.matrix.select_columns(range(2, 4)))
        ok_all &= rep.verified and is_unit(gcd(da, db)) and phi @ rep.base_change.matrix == rep.matrix
    try:
        regularize_symmetric(SymmetricResolution.from_matrix(load("degenerate").phi))
        g = None
    except VerificationFailed as exc:
        g = exc.gcd
    record(7, [
        ("20 seeded scrambles verify with unit gcd", ok_all),
        ("degenerate pair fails with gcd w", g is not None and g.monic() == prob.ring.coerce("w")),
    ])


def test_criterion_08_oracle_equivalence():
    checks = []
    for name in fixtures.resolution_fixtures():
        res = load(name).resolution()
        be = check_acyclic_minimal(res).acyclic
        tr = truncated_exactness(res, D=6)
        checks.append((f"{name} ({'exact' if be else 'not exact'})", tr is not None and tr.exact == be))
    record(8, checks)


def test_criterion_09_symmetrize_round_trip():
    prob = load("E1")
    res = prob.resolution()
    out = symmetrize(res, prob.u)
    new = out.resolution
    from szpiro.groebner import Submodule
    a = Submodule(res.ring, 1, res.phi.columns())
    b = Submodule(res.ring, 1, new.phi.columns())
    R = res.ring
    S4 = PolyMatrix.from_strings(R, [["0", "1", "2", "0"], ["-1", "0", "0", "3"],
                                     ["-2", "0", "0", "1"], ["0", "-3", "-1", "0"]])
    S6 = PolyMatrix.from_strings(R, [["0", "1", "0", "0", "2", "0"], ["-1", "0", "1", "0", "0", "0"],
                                     ["0", "-1", "0", "1", "0", "3"], ["0", "0", "-1", "0", "1", "0"],
                                     ["-2", "0", "0", "-1", "0", "1"], ["0", "0", "-3", "0", "-1", "0"]])
    normal = []
    for S in (out.skew, S4, S6):
        B = skew_normal_form(S).matrix
        normal.append(B.T @ S @ B == symplectic_form(R, S.nrows // 2))
    record(9, [
        ("symmetry check passes", symmetry_check(FreeResolution(R, new.phi, new.psi)) is not None),
        ("coker unchanged by mutual membership", a.is_subset(b) and b.is_subset(a)),
        ("B^T S B = J on 3 forms", all(normal)),
    ])


def emitted_reports():
    """Every report the CLI commands emit on the fixture set, as JSON round trips."""
    out = []
    for name in fixtures.names():
        prob = load(name)
        runs = []
        if prob.psi is not None:
            runs.append(("diagnose", lambda p=prob: run_diagnose(p)))
            runs.append(("ring", lambda p=prob: run_ring(p)))
        if prob.u is not None:
            runs.append(("symmetrize", lambda p=prob: run_symmetrize(p)))
        if prob.phi.ncols == 2 * prob.phi.nrows:
            runs.append(("regularize", lambda p=prob: run_regularize(p)))
        for kind, fn in runs:
            rep, _ = fn()
            out.append((f"{kind} {name}", json.loads(json.dumps(rep, default=str))))
    return out


def test_criterion_10_report_verifiability():
    checks = []
    total = 0
    for label, rep in emitted_reports():
        results = verify_report(rep)
        total += len(results)
        checks.append((label, all(c["ok"] for c in results)))
    record(10, checks + [(f"{total} checks re-run", total > 0)])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
