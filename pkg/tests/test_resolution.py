import math

import pytest

from conftest import load
from szpiro.errors import (
    ComplexNotZero,
    InhomogeneousEntry,
    NotAnIsomorphism,
    NotSkew,
    NotUnimodular,
    ShapeMismatch,
)
from szpiro.groebner import Submodule
from szpiro.polymat import PolyMatrix, symplectic_form
from szpiro.resolution import (
    FreeResolution,
    GradedData,
    check_acyclic_minimal,
    dualize,
    graded_twist_check,
    heart_check,
    koszul_check,
    locate_symmetry_violation,
    skew_normal_form,
    symmetrize,
    symmetry_check,
)


def test_koszul_fixture_is_acyclic_minimal_codim2():
    rep = check_acyclic_minimal(load("E1").resolution())
    assert (rep.acyclic, rep.minimal, rep.codim2) == (True, True, True)
    assert rep.ranks == {"phi": 1, "psi": 1}


def test_degenerate_pair_is_not_acyclic():
    rep = check_acyclic_minimal(load("degenerate").resolution())
    assert not rep.acyclic
    assert rep.ranks["psi"] == 2 and rep.depths["I(psi)"] == 1


def test_complex_condition(R):
    phi = PolyMatrix.from_strings(R, [["x", "y"]])
    psi = PolyMatrix.from_strings(R, [["y"], ["x"]])
    with pytest.raises(ComplexNotZero):
        check_acyclic_minimal(FreeResolution(R, phi, psi))


def test_heart_values():
    assert heart_check(load("E1").phi).depth == math.inf
    h2 = heart_check(load("E2").phi)
    assert h2.holds and h2.depth == 4
    h3 = heart_check(load("E3").phi)
    assert not h3.holds and h3.depth == 3


def test_symmetry_and_koszul():
    assert symmetry_check(load("E2").resolution()) is None
    assert "alpha beta^T" in locate_symmetry_violation(load("E2").resolution())
    sym = symmetry_check(load("E3").resolution())
    cert = koszul_check(sym)
    assert cert.regular_sequence and cert.identities_hold
    assert str(cert.det_beta) == "w^2"
    bad = koszul_check(symmetry_check(load("swapped").resolution()))
    assert not bad.regular_sequence and str(bad.gcd.monic()) == "x*y"


def test_graded_twist():
    assert graded_twist_check(load("E1").resolution()).twist == 2
    assert graded_twist_check(load("E2sym").resolution()).twist == 6
    res = load("E1").resolution()
    dual = dualize(res)
    assert dual.phi == res.psi.T


def test_inhomogeneous_entry(R):
    phi = PolyMatrix.from_strings(R, [["x", "y^2 + z"]])
    psi = PolyMatrix.from_strings(R, [["-y^2 - z"], ["x"]])
    res = FreeResolution(R, phi, psi, GradedData([0], [1, 1], [2], None, None))
    with pytest.raises(InhomogeneousEntry):
        graded_twist_check(res)


def test_skew_normal_form(R):
    S = PolyMatrix.from_strings(R, [["0", "1", "2", "0"], ["-1", "0", "0", "3"],
                                    ["-2", "0", "0", "1"], ["0", "-3", "-1", "0"]])
    B = skew_normal_form(S).matrix
    assert B.T @ S @ B == symplectic_form(R, 2)
    with pytest.raises(NotSkew):
        skew_normal_form(PolyMatrix.from_strings(R, [["0", "1"], ["1", "0"]]))
    with pytest.raises(NotUnimodular):
        skew_normal_form(PolyMatrix.from_strings(R, [["0", "x"], ["-x", "0"]]))


def test_symmetrize_round_trip():
    prob = load("E1")
    res = prob.resolution()
    out = symmetrize(res, prob.u)
    new = out.resolution
    assert symmetry_check(FreeResolution(new.ring, new.phi, new.psi)) is not None
    old_im = Submodule(res.ring, 1, res.phi.columns())
    new_im = Submodule(res.ring, 1, new.phi.columns())
    assert old_im.is_subset(new_im) and new_im.is_subset(old_im)
    assert out.B.matrix.T @ out.skew @ out.B.matrix == symplectic_form(res.ring, 1)


def test_symmetrize_rejects_non_isomorphism(R):
    prob = load("E1")
    with pytest.raises(NotAnIsomorphism):
        symmetrize(prob.resolution(), PolyMatrix.from_strings(R, [["x"]]))
    with pytest.raises(ShapeMismatch):
        symmetrize(prob.resolution(), PolyMatrix.from_strings(R, [["1", "0"]]))
