"""Exact multivariate polynomials over Q or a prime field F_p (p odd).

Polynomials are immutable; the term map sends exponent tuples to nonzero
coefficients.  Rational coefficients are Python ints or ``Fraction``; prime
field coefficients are ints in ``range(p)``.
"""

import re
from fractions import Fraction
from functools import reduce as _fold

from .errors import (
    ArityMismatch,
    CharacteristicObstruction,
    InvalidRing,
    ModulusViolation,
    NotDivisible,
    PolySyntaxError,
    RingMismatch,
    UnknownVariable,
    ZeroInput,
)

_NAME_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9_]*$")


def is_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        raise TypeError(f"cannot coerce {value!r} into Q")

    def norm(self, c):
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.norm(Fraction(1) / c)

    def div(self, a, b):
        return self.norm(Fraction(a) / b)

    def fmt(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"

    __repr__ = __str__


class PrimeField:
    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidRing(f"modulus {p} is not prime")
        if p == 2:
            raise InvalidRing("characteristic 2 is not supported (2 must be invertible)")
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ModulusViolation(f"{value} is not defined modulo {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def norm(self, c):
        return c % self.p

    def inv(self, c):
        if c % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def fmt(self, c):
        # symmetric residue keeps printed output readable
        return str(c - self.p if c > self.p // 2 else c)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __str__(self):
        return f"Fp:{self.p}"

    __repr__ = __str__


def make_field(desc):
    """Build a field from ``"Q"``, ``"Fp:<p>"``, an int p, or a field object."""
    if isinstance(desc, (RationalField, PrimeField)):
        return desc
    if isinstance(desc, int):
        return PrimeField(desc)
    if isinstance(desc, str):
        s = desc.strip()
        if s in ("Q", "QQ"):
            return RationalField()
        if s.startswith("Fp:"):
            try:
                p = int(s[3:])
            except ValueError:
                raise InvalidRing(f"bad field descriptor {desc!r}") from None
            return PrimeField(p)
    raise InvalidRing(f"bad field descriptor {desc!r}")


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e):
    return e


_ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


class PolyRing:
    """Polynomial ring k[x_1..x_n] with a fixed monomial order."""

    def __init__(self, variables, field="Q", order="grevlex"):
        variables = tuple(variables)
        if not variables:
            raise InvalidRing("at least one variable is required")
        for v in variables:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise InvalidRing(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise InvalidRing("variable names must be distinct")
        if order not in _ORDERS:
            raise InvalidRing(f"unknown monomial order {order!r}")
        self.variables = variables
        self.nvars = len(variables)
        self.field = make_field(field)
        self.order = order
        self.key = _ORDERS[order]
        self._index = {v: i for i, v in enumerate(variables)}
        self.zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field}, {self.order})"

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return Poly(self, {self.zero_exp: 1})

    def const(self, c):
        c = self.field(c)
        return Poly(self, {self.zero_exp: c} if c != 0 else {})

    def var(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    @property
    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c != 0 else {})

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, Poly):
            if value.ring != self:
                raise RingMismatch("polynomial belongs to a different ring")
            return value
        if isinstance(value, str):
            return parse_poly(value, self)
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp, 0)

    def sorted_terms(self):
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_exp(self):
        if not self.terms:
            return None
        return max(self.terms, key=self.ring.key)

    def lc(self):
        if not self.terms:
            return 0
        return self.terms[self.leading_exp()]

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = var if isinstance(var, int) else self.ring.index(var)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self, weights=None):
        return self.weighted_degree(weights) is not None or not self.terms

    def weighted_degree(self, weights=None):
        """Common degree of all terms, or None if inhomogeneous (or zero)."""
        if not self.terms:
            return None
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(a * w for a, w in zip(e, weights)) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        field = self.ring.field
        c = field(c) if not isinstance(c, int) or field.characteristic else c
        if c == 0:
            return Poly(self.ring, {})
        norm = field.norm
        return Poly(self.ring, {e: norm(v * c) for e, v in self.terms.items()})

    def mul_term(self, exp, c):
        norm = self.ring.field.norm
        out = {}
        for e, v in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exp))] = norm(v * c)
        return Poly(self.ring, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        norm = self.ring.field.norm
        out = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly(self.ring, {e: v for e, v in ((e, norm(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant() and other:
                return self.scale(self.ring.field.inv(other.constant_term()))
            return self.exact_div(other)
        return self.scale(self.ring.field.inv(self.ring.field(other)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            try:
                return self.terms == self.ring.const(other).terms
            except ModulusViolation:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def monic(self):
        if not self.terms:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return self.scale(self.ring.field.inv(lc))

    # -- division ------------------------------------------------------
    def divmod(self, g):
        """Multivariate division by a single polynomial: self = q*g + r."""
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.ring.field
        key = self.ring.key
        ge = g.leading_exp()
        ginv = field.inv(g.terms[ge])
        norm = field.norm
        rem = {}
        quo = {}
        f = dict(self.terms)
        gitems = list(g.terms.items())
        while f:
            e = max(f, key=key)
            c = f[e]
            if all(a >= b for a, b in zip(e, ge)):
                m = tuple(a - b for a, b in zip(e, ge))
                q = norm(c * ginv)
                quo[m] = norm(quo.get(m, 0) + q)
                for eg, cg in gitems:
                    t = tuple(a + b for a, b in zip(m, eg))
                    v = norm(f.get(t, 0) - q * cg)
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
            else:
                rem[e] = c
                del f[e]
        return Poly(self.ring, {k: v for k, v in quo.items() if v}), Poly(self.ring, rem)

    def exact_div(self, g):
        q, r = self.divmod(g)
        if r:
            raise NotDivisible("polynomial division is not exact")
        return q

    def divides(self, other):
        return not other.divmod(self)[1]

    # -- calculus, evaluation, substitution ----------------------------
    def diff(self, var):
        i = var if isinstance(var, int) else self.ring.index(var)
        norm = self.ring.field.norm
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = norm(c * e[i])
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return Poly(self.ring, out)

    def evaluate(self, point):
        """Exact evaluation at a point given as a sequence of field scalars."""
        point = list(point)
        if len(point) != self.ring.nvars:
            raise ArityMismatch(
                f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables"
            )
        field = self.ring.field
        point = [field(x) for x in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total += t
        return field.norm(total) if field.characteristic else field(Fraction(total))

    def substitute(self, images, target=None):
        """Ring homomorphism sending variable i to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ArityMismatch("one image per variable is required")
        if target is None:
            target = images[0].ring if images and isinstance(images[0], Poly) else self.ring
        images = [target.coerce(im) for im in images]
        out = target.zero
        cache = {}
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def to_modp(self, p):
        """Coefficient-wise image in F_p (integer exponent map unchanged)."""
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise ModulusViolation(f"denominator of {c} vanishes mod {p}")
                v = c.numerator * pow(c.denominator, -1, p) % p
            else:
                v = c % p
            if v:
                out[e] = v
        return out

    # -- printing ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        fmt = self.ring.field.fmt
        pieces = []
        for e, c in self.sorted_terms():
            s = fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character at offset {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, msg):
        raise PolySyntaxError(f"{msg} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            self.fail("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    if rhs.is_constant():
                        raise ModulusViolation(f"division by zero in {self.text!r}")
                    self.fail("division is only allowed by nonzero constants")
                value = value.scale(self.ring.field.inv(rhs.constant_term()))
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer literal")
            return base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            return self.ring.var(self.ring.index(val))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return inner
        self.fail("unexpected end of input" if kind is None else f"unexpected token {val!r}")


def parse_poly(text, ring):
    """Parse ``text`` (``+ - * / ^``, parentheses, integer literals) in ``ring``."""
    if not isinstance(text, str):
        raise PolySyntaxError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, ring).parse()


# ---------------------------------------------------------------------------
# gcd and square-free decomposition


def _coeffs_in(f, i):
    """Coefficients of f viewed as a polynomial in variable i."""
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        ne = e[:i] + (0,) + e[i + 1:]
        out.setdefault(k, {})[ne] = c
    return {k: Poly(f.ring, t) for k, t in out.items()}


def _lc_in(f, i):
    d = f.degree(i)
    return Poly(f.ring, {e[:i] + (0,) + e[i + 1:]: c for e, c in f.terms.items() if e[i] == d})


def _var_power(ring, i, k):
    e = [0] * ring.nvars
    e[i] = k
    return tuple(e)


def content_in(f, i):
    return _fold(gcd, _coeffs_in(f, i).values(), f.ring.zero)


def _prem(a, b, i):
    db = b.degree(i)
    lcb = _lc_in(b, i)
    r = a
    e = a.degree(i) - db + 1
    while r and r.degree(i) >= db:
        k = r.degree(i) - db
        r = lcb * r - (_lc_in(r, i) * b).mul_term(_var_power(a.ring, i, k), 1)
        e -= 1
    return r * lcb**e if e > 0 else r


def _pp_in(f, i):
    if not f:
        return f
    c = content_in(f, i)
    return f.exact_div(c)


def gcd(f, g):
    """Monic greatest common divisor (recursive primitive PRS)."""
    if isinstance(f, Poly) and isinstance(g, Poly) and f.ring != g.ring:
        raise RingMismatch("gcd operands live in different rings")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one
    ring = f.ring
    i = next(j for j in range(ring.nvars) if f.degree(j) > 0 or g.degree(j) > 0)
    if f.degree(i) == 0:
        return gcd(f, content_in(g, i))
    if g.degree(i) == 0:
        return gcd(content_in(f, i), g)
    cf, cg = content_in(f, i), content_in(g, i)
    c = gcd(cf, cg)
    a, b = f.exact_div(cf), g.exact_div(cg)
    if a.degree(i) < b.degree(i):
        a, b = b, a
    while b:
        r = _prem(a, b, i)
        a, b = b, _pp_in(r, i)
    return (c * _pp_in(a, i)).monic()


def multivariate_gcd(f, g):
    return gcd(f, g)


def is_unit(f):
    return f.is_constant() and bool(f)


def squarefree_split(f):
    """Square-free decomposition: list of (factor, multiplicity).

    Factors are monic, square-free and pairwise coprime; their product with
    multiplicities equals ``f`` up to a nonzero constant.  Factors need not
    be irreducible.
    """
    if not f:
        raise ZeroInput("square-free decomposition of the zero polynomial")
    p = f.ring.field.characteristic
    if p and any(k >= p for e in f.terms for k in e):
        raise CharacteristicObstruction(
            f"an exponent reaches the characteristic {p}; Yun's method does not apply"
        )
    return _sqf(f.monic())


def _sqf(f):
    if f.is_constant():
        return []
    ring = f.ring
    i = next(j for j in range(ring.nvars) if f.degree(j) > 0)
    c = content_in(f, i)
    pp = f.exact_div(c)
    return _yun(pp, i) + _sqf(c)


def _yun(f, i):
    out = []
    df = f.diff(i)
    a = gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.diff(i)
    k = 1
    while not b.is_constant():
        a = gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.diff(i)
        if not a.is_constant():
            out.append((a.monic(), k))
        k += 1
    return out


def evaluate(f, point):
    return f.evaluate(point)
