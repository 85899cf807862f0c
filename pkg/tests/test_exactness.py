import pytest

from conftest import load
from szpiro import fixtures
from szpiro.exactness import find_grading, monomials_of_degree, truncated_exactness
from szpiro.resolution import check_acyclic_minimal


def test_monomial_count():
    # four standard-graded variables: C(d+3, 3) monomials of degree d
    assert [len(monomials_of_degree((1, 1, 1, 1), d)) for d in range(4)] == [1, 4, 10, 20]
    assert len(monomials_of_degree((1, 2), 4)) == 3


def test_grading_found_for_cusp():
    w, _ = find_grading(load("E2").resolution())
    assert list(w) == [1, 2, 3, 2]


def test_degenerate_pair_has_homology():
    out = truncated_exactness(load("degenerate").resolution(), D=6)
    assert out is not None and not out.exact
    assert out.failures


@pytest.mark.parametrize("name", fixtures.resolution_fixtures())
def test_oracle_agrees_with_rank_depth_test(name):
    res = load(name).resolution()
    out = truncated_exactness(res, D=6)
    assert out is not None
    assert out.exact == check_acyclic_minimal(res).acyclic
