import random

import pytest

from conftest import load
from szpiro.errors import VerificationFailed
from szpiro.poly import gcd, is_unit
from szpiro.polymat import PolyMatrix, determinant, is_split_symmetric, is_symplectic
from szpiro.regularizer import (
    block_oracle,
    find_good_minor,
    regularize_symmetric,
    regularize_tau1,
    zero_oracle,
)
from szpiro.resolution import SymmetricResolution
from szpiro.selftest import random_op


def dets(M):
    n = M.nrows
    return determinant(M.select_columns(range(n))), determinant(M.select_columns(range(n, 2 * n)))


def test_lemma_fixture(R):
    phi = load("lemma").phi
    rep = regularize_tau1(phi)
    assert rep.verified and str(rep.det_alpha) == "x*w"
    (step,) = rep.steps
    assert step["l"] == [3, 1] and step["J"] == 1 and step["y"] == [2]
    assert phi @ rep.base_change.matrix == rep.matrix
    assert determinant(rep.matrix.select_columns(range(2))) == R.coerce("x*w")


def test_find_good_minor(R):
    M = PolyMatrix.from_strings(R, [["x", "x", "w", "0"], ["y", "y", "0", "w"]])
    idx, E, M2 = find_good_minor(M, zero_oracle(R), symmetric=False)
    assert str(idx) == "[1;2]"
    assert idx.value(M2)


def test_swapped_needs_two_steps(R):
    sym = SymmetricResolution.from_matrix(load("swapped").phi)
    rep = regularize_symmetric(sym)
    assert rep.verified
    assert [s["kind"] for s in rep.steps] == ["beta_plus_alpha", "beta_plus_alpha"]
    assert rep.det_beta == R.coerce("(y + x^2)*(x + y^2)")
    assert is_symplectic(rep.base_change.matrix)
    assert is_split_symmetric(rep.matrix)


def test_degenerate_pair_fails_with_gcd_w(R):
    sym = SymmetricResolution.from_matrix(load("degenerate").phi)
    with pytest.raises(VerificationFailed) as exc:
        regularize_symmetric(sym)
    assert exc.value.gcd.monic() == R.coerce("w")
    assert exc.value.report is not None and not exc.value.report.verified


@pytest.mark.parametrize("base", ["diag", "swapped"])
@pytest.mark.parametrize("seed", range(10))
def test_seeded_scrambles(base, seed):
    phi = load(base).phi
    rng = random.Random(seed)
    for _ in range(3):
        phi = phi @ random_op(rng, phi.ring, 2).matrix
    rep = regularize_symmetric(SymmetricResolution.from_matrix(phi), seed=seed)
    da, db = dets(rep.matrix)
    assert rep.verified and is_unit(gcd(da, db))
    assert phi @ rep.base_change.matrix == rep.matrix


def test_block_oracle(R):
    o = block_oracle(R.coerce("x*y"))
    # a block stands for the union of its prime factors
    assert o.membership(R.coerce("x^2*y + x*y*z"))
    assert o.membership(R.coerce("x"))
    assert not o.membership(R.coerce("z + 1"))
