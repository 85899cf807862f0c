from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from szpiro.errors import InvalidRing, NotDivisible, PolySyntaxError, UnknownVariable
from szpiro.poly import PolyRing, gcd, is_unit, squarefree_split

P31 = 2**31 - 1


def test_parse_and_print(R):
    f = R.coerce("x^2*y - 3*z + 1/2")
    assert str(R.coerce(str(f))) == str(f)
    assert f.constant_term() == Fraction(1, 2)
    assert R.coerce("(x+y)^2") == R.coerce("x^2 + 2*x*y + y^2")


def test_bad_input(R):
    with pytest.raises(UnknownVariable):
        R.coerce("x + q")
    with pytest.raises(PolySyntaxError):
        R.coerce("x + * y")
    with pytest.raises(InvalidRing):
        PolyRing(["x", "x"])
    with pytest.raises(InvalidRing):
        PolyRing(["x"], "Fp:9")


def test_grevlex_leading_term(R):
    f = R.coerce("x*z^2 + y^3")
    # same degree: grevlex prefers the monomial with the smaller last-variable exponent
    assert f.leading_exp() == (0, 3, 0, 0)
    lex = R.with_order("lex").coerce("x*z^2 + y^3")
    assert lex.leading_exp() == (1, 0, 2, 0)


def test_divmod_and_exact_division(R):
    f, g = R.coerce("x^2 - y^2"), R.coerce("x - y")
    assert f.exact_div(g) == R.coerce("x + y")
    assert g.divides(f)
    with pytest.raises(NotDivisible):
        R.coerce("x").exact_div(R.coerce("y"))


def test_prime_field_arithmetic():
    F = PolyRing(["x", "y"], "Fp:7")
    f = F.coerce("3*x + 5")
    assert (f + f + f).constant_term() == 1
    assert F.coerce("x^7 - x").evaluate([3, 0]) == 0


def test_squarefree_split(R):
    f = R.coerce("x^2*y*(x+z)^3")
    parts = squarefree_split(f)
    prod = R.one
    for p, k in parts:
        assert p == p.monic()
        prod = prod * p ** k
    assert prod.monic() == f.monic()
    assert sorted(k for _, k in parts) == [1, 2, 3]


small = st.integers(-3, 3)


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"))


def rand_poly(R, coeffs):
    mons = ["1", "x", "y", "z", "w", "x*y", "y*z", "x^2", "z*w"]
    f = R.zero
    for c, m in zip(coeffs, mons):
        f = f + R.coerce(m).scale(c)
    return f


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=9, max_size=9), st.lists(small, min_size=9, max_size=9),
       st.lists(small, min_size=9, max_size=9))
def test_gcd_against_sympy(a, b, c):
    R = PolyRing(["x", "y", "z", "w"])
    f, g, h = rand_poly(R, a), rand_poly(R, b), rand_poly(R, c)
    if not h:
        h = R.one
    F, G = f * h, g * h
    if not F or not G:
        return
    ours = gcd(F, G)
    theirs = sympy.gcd(to_sympy(F), to_sympy(G))
    assert sympy.cancel(to_sympy(ours) / theirs).is_number


def test_gcd_100_random_instances_mod_large_prime():
    """Planted common factor over F_p, p = 2^31 - 1: gcd recovers it exactly."""
    import random

    rng = random.Random(1234)
    F = PolyRing(["x", "y", "z"], f"Fp:{P31}")
    mons = [F.coerce(m) for m in ["1", "x", "y", "z", "x*y", "y*z", "x^2", "z^2"]]

    def rp(k):
        f = F.zero
        for m in rng.sample(mons, k):
            f = f + m.scale(rng.randrange(1, P31))
        return f

    for _ in range(100):
        h = rp(3) + F.coerce("x")  # degree >= 1
        f, g = rp(3) * F.coerce("y + 1"), rp(3) * F.coerce("z + 2")
        G = gcd(f * h, g * h)
        assert h.monic().divides(G)
        assert G.divides(f * h) and G.divides(g * h)
        # the cofactors share nothing with each other beyond what h carries
        assert is_unit(gcd((f * h).exact_div(G), (g * h).exact_div(G)))
