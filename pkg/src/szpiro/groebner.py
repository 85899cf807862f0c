"""Gröbner bases for ideals and submodules of free modules.

Module elements are handled internally as sparse dicts ``{(component,
exponent): coefficient}`` under a position-over-term order (lower component
index is larger).  Ideals are rank-one submodules.

The S-pair budget defaults to 50 000 and can be overridden with the
``SZPIRO_MAX_SPAIRS`` environment variable or per call.
"""

import math
import os
import threading
from dataclasses import dataclass
from itertools import combinations

from .errors import RankMismatch, ResourceLimit, RingMismatch, ZeroDivisorQuery, EmptyMatrix
from .poly import Poly

DEFAULT_MAX_SPAIRS = 50_000


def max_spairs():
    env = os.environ.get("SZPIRO_MAX_SPAIRS")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MAX_SPAIRS


# ---------------------------------------------------------------------------
# sparse vector helpers


def _vec(polys):
    out = {}
    for i, f in enumerate(polys):
        for e, c in f.terms.items():
            out[(i, e)] = c
    return out


def _polys(vec, rank, ring):
    parts = [dict() for _ in range(rank)]
    for (i, e), c in vec.items():
        parts[i][e] = c
    return tuple(Poly(ring, t) for t in parts)


def _axpy(f, q, m, g, norm):
    """f -= q * x^m * g (in place)."""
    for (i, e), c in g.items():
        t = (i, tuple(a + b for a, b in zip(e, m)))
        v = norm(f.get(t, 0) - q * c)
        if v:
            f[t] = v
        else:
            f.pop(t, None)


def _scaled(g, q, m, norm):
    return {(i, tuple(a + b for a, b in zip(e, m))): norm(q * c) for (i, e), c in g.items()}


class _Elt:
    __slots__ = ("vec", "comp", "exp", "lc", "rep")

    def __init__(self, vec, tkey, rep=None):
        self.vec = vec
        self.comp, self.exp = max(vec, key=tkey)
        self.lc = vec[(self.comp, self.exp)]
        self.rep = rep


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class _Engine:
    """Buchberger completion with the coprime and chain criteria."""

    def __init__(self, ring, rank, track=False, budget=None):
        self.ring = ring
        self.rank = rank
        self.track = track
        self.budget = max_spairs() if budget is None else budget
        key = ring.key
        self.tkey = lambda t: (-t[0], key(t[1]))
        self.field = ring.field
        self.norm = ring.field.norm
        self.spairs = 0

    def reduce(self, vec, basis, full=True, rep=None):
        """Return (remainder, quotients, rep) with vec = sum q_k basis_k + remainder."""
        f = dict(vec)
        r = {}
        quot = {}
        norm = self.norm
        inv = self.field.inv
        tkey = self.tkey
        by_comp = {}
        for k, g in enumerate(basis):
            by_comp.setdefault(g.comp, []).append((k, g))
        rep = dict(rep) if rep is not None else None
        while f:
            t = max(f, key=tkey)
            c = f[t]
            comp, e = t
            for k, g in by_comp.get(comp, ()):
                if _divides(g.exp, e):
                    m = tuple(a - b for a, b in zip(e, g.exp))
                    q = norm(c * inv(g.lc))
                    _axpy(f, q, m, g.vec, norm)
                    qk = quot.setdefault(k, {})
                    qk[m] = norm(qk.get(m, 0) + q)
                    if rep is not None and g.rep is not None:
                        _axpy(rep, q, m, g.rep, norm)
                    break
            else:
                if not full:
                    r.update(f)
                    break
                r[t] = c
                del f[t]
        return r, quot, rep

    def _spoly(self, a, b):
        lcm = _lcm(a.exp, b.exp)
        ma = tuple(x - y for x, y in zip(lcm, a.exp))
        mb = tuple(x - y for x, y in zip(lcm, b.exp))
        inv = self.field.inv
        norm = self.norm
        s = _scaled(a.vec, inv(a.lc), ma, norm)
        _axpy(s, inv(b.lc), mb, b.vec, norm)
        rep = None
        if self.track:
            rep = _scaled(a.rep, inv(a.lc), ma, norm)
            _axpy(rep, inv(b.lc), mb, b.rep, norm)
        return s, rep

    def complete(self, gens):
        """Reduced Gröbner basis of the module generated by ``gens`` (dict vectors)."""
        basis = []
        pairs = set()
        tkey = self.tkey

        def pair_key(p):
            a, b = basis[p[0]], basis[p[1]]
            lcm = _lcm(a.exp, b.exp)
            return (tkey((a.comp, lcm)), p)

        def add(vec, rep):
            r, _, rep = self.reduce(vec, basis, full=True, rep=rep)
            if not r:
                return
            elt = _Elt(r, tkey, rep)
            idx = len(basis)
            basis.append(elt)
            for j in range(idx):
                if basis[j].comp == elt.comp:
                    pairs.add((j, idx))

        for n, vec in enumerate(gens):
            if not vec:
                continue
            rep = {(n, self.ring.zero_exp): 1} if self.track else None
            add(vec, rep)

        while pairs:
            p = min(pairs, key=pair_key)
            pairs.discard(p)
            i, j = p
            a, b = basis[i], basis[j]
            lcm = _lcm(a.exp, b.exp)
            if self.rank == 1 and all(x == 0 or y == 0 for x, y in zip(a.exp, b.exp)):
                continue
            chain = False
            for k, g in enumerate(basis):
                if k in (i, j) or g.comp != a.comp or not _divides(g.exp, lcm):
                    continue
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    chain = True
                    break
            if chain:
                continue
            self.spairs += 1
            if self.spairs > self.budget:
                raise ResourceLimit(f"S-pair budget of {self.budget} exceeded")
            s, rep = self._spoly(a, b)
            add(s, rep)

        return self._interreduce(basis)

    def _interreduce(self, basis):
        # drop elements whose leading term is divisible by another's
        keep = []
        for k, g in enumerate(basis):
            dominated = False
            for l, h in enumerate(basis):
                if l == k or h.comp != g.comp or not _divides(h.exp, g.exp):
                    continue
                if h.exp != g.exp or l < k:
                    dominated = True
                    break
            if not dominated:
                keep.append(g)
        out = []
        inv = self.field.inv
        norm = self.norm
        for k, g in enumerate(keep):
            others = keep[:k] + keep[k + 1:]
            # leading term is irreducible by the others; reduce the tail
            lead = (g.comp, g.exp)
            tail = dict(g.vec)
            del tail[lead]
            rep = g.rep
            r, _, rep = self.reduce(tail, others, full=True, rep=rep)
            r[lead] = g.lc
            s = inv(g.lc)
            r = {t: norm(c * s) for t, c in r.items()}
            if rep is not None:
                rep = {t: norm(c * s) for t, c in rep.items()}
            out.append(_Elt(r, self.tkey, rep))
        # reduction of tails used unreduced neighbours; repeat until stable
        changed = True
        while changed:
            changed = False
            for k, g in enumerate(out):
                others = out[:k] + out[k + 1:]
                lead = (g.comp, g.exp)
                tail = dict(g.vec)
                del tail[lead]
                r, quot, rep = self.reduce(tail, others, full=True, rep=g.rep)
                if quot:
                    r[lead] = 1
                    out[k] = _Elt(r, self.tkey, rep)
                    changed = True
        out.sort(key=lambda g: self.tkey((g.comp, g.exp)), reverse=True)
        return out


@dataclass(frozen=True)
class DivisionWitness:
    """``v = sum(coefficients[k] * basis[k]) + remainder`` exactly."""

    remainder: tuple
    coefficients: list
    basis: list

    @property
    def is_member(self):
        return all(not f for f in self.remainder)


def _check_same_ring(ring, polys):
    for f in polys:
        if f.ring != ring:
            raise RingMismatch("vector entries live in different rings")


class Submodule:
    """Submodule of A^rank given by generator vectors (lists of Poly)."""

    def __init__(self, ring, rank, generators):
        self.ring = ring
        self.rank = rank
        gens = []
        for g in generators:
            g = tuple(ring.coerce(x) for x in g)
            if len(g) != rank:
                raise RankMismatch(f"generator of length {len(g)} in a rank-{rank} module")
            gens.append(g)
        self.generators = gens
        self._lock = threading.Lock()
        self._gb = None
        self._gb_tracked = None
        self.spairs = 0

    def __repr__(self):
        return f"Submodule(rank={self.rank}, ngens={len(self.generators)})"

    # -- bases -----------------------------------------------------------
    def _elements(self, track=False, budget=None):
        with self._lock:
            if track:
                if self._gb_tracked is None:
                    eng = _Engine(self.ring, self.rank, track=True, budget=budget)
                    self._gb_tracked = eng.complete([_vec(g) for g in self.generators])
                    self.spairs += eng.spairs
                    if self._gb is None:
                        self._gb = self._gb_tracked
                return self._gb_tracked
            if self._gb is None:
                eng = _Engine(self.ring, self.rank, track=False, budget=budget)
                self._gb = eng.complete([_vec(g) for g in self.generators])
                self.spairs += eng.spairs
            return self._gb

    def groebner_basis(self, budget=None):
        return [_polys(g.vec, self.rank, self.ring) for g in self._elements(budget=budget)]

    basis = groebner_basis

    def leading_terms(self):
        return [(g.comp, g.exp) for g in self._elements()]

    # -- membership ------------------------------------------------------
    def _as_vec(self, v):
        v = tuple(self.ring.coerce(x) for x in v)
        if len(v) != self.rank:
            raise RankMismatch(f"vector of length {len(v)} against rank {self.rank}")
        return _vec(v)

    def normal_form(self, v):
        elts = self._elements()
        eng = _Engine(self.ring, self.rank)
        r, _, _ = eng.reduce(self._as_vec(v), elts)
        return _polys(r, self.rank, self.ring)

    def normal_form_with_witness(self, v):
        elts = self._elements()
        eng = _Engine(self.ring, self.rank)
        r, quot, _ = eng.reduce(self._as_vec(v), elts)
        coeffs = [self.ring.zero] * len(elts)
        for k, q in quot.items():
            coeffs[k] = Poly(self.ring, {e: c for e, c in q.items() if c})
        return DivisionWitness(
            remainder=_polys(r, self.rank, self.ring),
            coefficients=coeffs,
            basis=[_polys(g.vec, self.rank, self.ring) for g in elts],
        )

    def contains(self, v):
        return all(not f for f in self.normal_form(v))

    __contains__ = contains

    def lift(self, v):
        """Coefficients c with ``v = sum c_j * generators[j]``, or None."""
        elts = self._elements(track=True)
        eng = _Engine(self.ring, self.rank)
        vec = self._as_vec(v)
        r, quot, _ = eng.reduce(vec, elts)
        if r:
            return None
        norm = self.ring.field.norm
        total = {}
        for k, q in quot.items():
            for m, c in q.items():
                _axpy(total, norm(-c), m, elts[k].rep, norm)
        out = _polys(total, len(self.generators), self.ring) if self.generators else ()
        return list(out)

    def is_subset(self, other):
        return all(other.contains(g) for g in self.generators)

    def equals(self, other):
        return self.is_subset(other) and other.is_subset(self)

    def is_zero(self):
        return all(all(not f for f in g) for g in self.generators)

    # -- constructions ---------------------------------------------------
    def quotient(self, f):
        """(M : f) = {v : f v in M}."""
        f = self.ring.coerce(f)
        if not f:
            raise ZeroDivisorQuery("quotient by the zero polynomial")
        n = self.rank
        zero = self.ring.zero
        gens = []
        for i in range(n):
            g = [zero] * (2 * n)
            g[i] = f
            g[n + i] = self.ring.one
            gens.append(g)
        for m in self.generators:
            gens.append(list(m) + [zero] * n)
        return Submodule(self.ring, n, eliminate_components(self.ring, 2 * n, gens, n))

    def __add__(self, other):
        if other.rank != self.rank:
            raise RankMismatch("sum of submodules of different rank")
        return Submodule(self.ring, self.rank, self.generators + other.generators)


def eliminate_components(ring, rank, gens, k, budget=None):
    """Generators of M ∩ (0^k ⊕ A^(rank-k)), projected to the last components."""
    eng = _Engine(ring, rank, budget=budget)
    elts = eng.complete([_vec(g) for g in gens])
    out = []
    for g in elts:
        if g.comp >= k:
            full = _polys(g.vec, rank, ring)
            out.append(full[k:])
    return out


class Ideal:
    """Ideal of a polynomial ring with a lazily computed reduced Gröbner basis."""

    def __init__(self, ring, generators):
        self.ring = ring
        gens = [ring.coerce(g) for g in generators]
        self.generators = [g for g in gens if g]
        self.module = Submodule(ring, 1, [(g,) for g in self.generators])

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def groebner_basis(self, budget=None):
        return [v[0] for v in self.module.groebner_basis(budget=budget)]

    basis = groebner_basis

    def reduce(self, f):
        return self.module.normal_form((f,))[0]

    def normal_form_with_witness(self, f):
        return self.module.normal_form_with_witness((f,))

    def contains(self, f):
        return not self.reduce(f)

    __contains__ = contains

    def lift(self, f):
        return self.module.lift((f,))

    def is_unit(self):
        return any(g.is_constant() for g in self.groebner_basis())

    def is_zero(self):
        return not self.generators

    def is_subset(self, other):
        return all(other.contains(g) for g in self.generators)

    def equals(self, other):
        return self.is_subset(other) and other.is_subset(self)

    def __add__(self, other):
        return Ideal(self.ring, self.generators + other.generators)

    def quotient(self, f):
        return ideal_quotient(self, f)

    def intersect(self, *others):
        return intersect_ideals(self, *others)

    def leading_monomials(self):
        return [g.leading_exp() for g in self.groebner_basis()]

    def dimension(self):
        return dimension_and_depth(self)[0]

    def depth(self):
        return dimension_and_depth(self)[1]


def groebner_basis(obj, budget=None):
    """Reduced Gröbner basis of an Ideal (list of Poly) or Submodule (list of vectors)."""
    return obj.groebner_basis(budget=budget)


def normal_form_with_witness(v, M):
    if isinstance(M, Ideal):
        if isinstance(v, Poly):
            v = (v,)
        return M.normal_form_with_witness(v[0])
    return M.normal_form_with_witness(v)


def ideal_quotient(J, f):
    f = J.ring.coerce(f)
    if not f:
        raise ZeroDivisorQuery("quotient by the zero polynomial")
    if not J.generators:
        return Ideal(J.ring, [])
    Q = J.module.quotient(f)
    return Ideal(J.ring, [g[0] for g in Q.generators])


def quotient(M, f):
    """(M : f) for an Ideal or a Submodule."""
    if isinstance(M, Ideal):
        return ideal_quotient(M, f)
    return M.quotient(f)


def intersect_ideals(*ideals):
    ring = ideals[0].ring
    if len(ideals) == 1:
        return ideals[0]
    if any(J.is_zero() for J in ideals):
        return Ideal(ring, [])
    k = len(ideals)
    zero, one = ring.zero, ring.one
    gens = [[one] * (k + 1)]
    for i, J in enumerate(ideals):
        for g in J.generators:
            v = [zero] * (k + 1)
            v[i] = g
            gens.append(v)
    return Ideal(ring, [v[0] for v in eliminate_components(ring, k + 1, gens, k)])


def annihilator_of_cokernel(phi):
    """Ann(coker phi) = {a : a e_i in im(phi) for all i} as an ideal."""
    n, m = phi.nrows, phi.ncols
    ring = phi.ring
    if n == 0:
        raise EmptyMatrix("annihilator of a matrix without rows")
    zero, one = ring.zero, ring.one
    size = n * n + 1
    first = [zero] * size
    for i in range(n):
        first[i * n + i] = one
    first[-1] = one
    gens = [first]
    for i in range(n):
        for j in range(m):
            v = [zero] * size
            for r in range(n):
                v[i * n + r] = phi[r, j]
            if any(v):
                gens.append(v)
    return Ideal(ring, [v[0] for v in eliminate_components(ring, size, gens, n * n)])


def _max_independent_set(nvars, monomials):
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in monomials]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return -1


def dimension_and_depth(J):
    """Krull dimension of A/J and depth(J, A) = nvars - dim (A is Cohen-Macaulay).

    The unit ideal has dimension -1 and depth ``math.inf``.
    """
    nvars = J.ring.nvars
    if J.is_zero():
        return nvars, 0
    gb = J.groebner_basis()
    if any(g.is_constant() for g in gb):
        return -1, math.inf
    dim = _max_independent_set(nvars, [g.leading_exp() for g in gb])
    return dim, nvars - dim


def depth_on_module(I, annihilator):
    """depth(I, R) for a Cohen-Macaulay module R with the given annihilator."""
    d_r = dimension_and_depth(annihilator)[0]
    d_q = dimension_and_depth(annihilator + I)[0]
    if d_q < 0:
        return math.inf
    return d_r - d_q
