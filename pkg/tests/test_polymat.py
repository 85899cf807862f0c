import random

import pytest
import sympy

from szpiro.errors import NotSquare, SymmetryBroken
from szpiro.poly import PolyRing
from szpiro.polymat import (
    MinorIndex,
    PolyMatrix,
    _det_bareiss,
    _det_cofactor,
    alpha_plus_beta,
    apply_base_change,
    beta_plus_alpha,
    colex,
    column_op,
    determinant,
    erase_first_row,
    fitting_ideal,
    is_split_symmetric,
    is_symplectic,
    maximal_minors,
    paired_op,
    pluecker_sum,
    rank,
    symplectic_form,
)


def M(R, rows):
    return PolyMatrix.from_strings(R, rows)


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"))


def test_arithmetic(R):
    A = M(R, [["x", "y"], ["z", "w"]])
    assert (A @ PolyMatrix.identity(R, 2)) == A
    assert A.T.T == A
    assert (A - A).is_zero()
    assert A.hstack(A).shape == (2, 4)


def test_colex_order():
    assert list(colex(4, 2)) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_bareiss_matches_cofactor_and_sympy(R):
    rng = random.Random(7)
    atoms = ["0", "1", "x", "y", "z", "w", "x+y", "2*z-w", "x*y"]
    for n in (2, 3, 4, 5):
        rows = [[rng.choice(atoms) for _ in range(n)] for _ in range(n)]
        A = M(R, rows)
        d = determinant(A)
        assert d == _det_cofactor(A.rows, R) == _det_bareiss(A.rows, R)
        S = sympy.Matrix([[to_sympy(R.coerce(e)) for e in r] for r in rows])
        assert sympy.expand(S.det() - to_sympy(d)) == 0
    with pytest.raises(NotSquare):
        determinant(M(R, [["x", "y"]]))


def test_maximal_minors_and_fitting(R):
    A = M(R, [["x", "y", "z"]])
    assert set(map(str, maximal_minors(A).values())) == {"x", "y", "z"}
    assert fitting_ideal(PolyMatrix(R, [], 3)).is_unit()
    phi = M(R, [["x", "y", "w", "0"], ["y", "z", "0", "w"]])
    assert erase_first_row(phi).shape == (1, 4)


def test_rank(R):
    assert rank(M(R, [["x", "y"], ["x^2", "x*y"]])) == 1
    assert rank(M(R, [["x", "y"], ["z", "w"]])) == 2
    assert rank(PolyMatrix.zeros(R, 2, 3)) == 0


def test_pluecker_hand_instance():
    F = PolyRing(["x"], "Fp:101")
    A = M(F, [["1", "0", "1", "1"], ["0", "1", "1", "2"]])
    assert not pluecker_sum(A, [], [], [0, 1, 2, 3])
    # and on a symbolic 2x4 matrix over Q
    S = PolyRing([f"a{i}" for i in range(8)])
    B = PolyMatrix(S, [S.gens[:4], S.gens[4:]])
    assert not pluecker_sum(B, [], [], [0, 1, 2, 3])


def test_minor_index(R):
    phi = M(R, [["x", "x", "w", "0"], ["y", "y", "0", "w"]])
    idx = MinorIndex([1], [2])
    assert idx.is_good and str(idx) == "[1;2]"
    assert idx.value(phi) == R.coerce("x*w")
    assert not MinorIndex([1], [1]).is_good


def test_symplectic_ops(R):
    n = 2
    J = symplectic_form(R, n)
    assert J.T == -J
    for E in (paired_op(R, n, 1, 2, R.coerce("z")), alpha_plus_beta(R, n, 1, R.coerce("x")),
              beta_plus_alpha(R, n, 2, R.coerce("y + 1"))):
        assert is_symplectic(E.matrix)
    assert not is_symplectic(column_op(R, 4, 2, 3, R.one).matrix)


def test_apply_base_change_guards_symmetry(R):
    sym = M(R, [["x", "0", "z", "0"], ["0", "y", "0", "w"]])
    assert is_split_symmetric(sym)
    out = apply_base_change(sym, paired_op(R, 2, 1, 2, R.coerce("x")))
    assert is_split_symmetric(out)
    asym = M(R, [["x", "y", "w", "0"], ["0", "y", "0", "w"]])
    with pytest.raises(SymmetryBroken):
        apply_base_change(asym, paired_op(R, 2, 1, 2, R.one))
