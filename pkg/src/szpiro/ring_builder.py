"""Ring structure on R = coker(phi) from a regular element of I'.

Pick d in I' (the maximal minors of phi with its first row erased) that is a
nonzerodivisor on R and on A/Ann R.  Then d r_i = a_i e for the generators
r_i of R, and a product r_i r_j is recovered from a_i a_j e = d^2 sum c_ijk r_k,
which is a module-membership question.
"""

import math
import random
from dataclasses import dataclass

from .errors import (
    AxiomViolation,
    ComplexNotZero,
    EmptyMatrix,
    InhomogeneousEntry,
    NoRegularElementFound,
    NotAnIsomorphism,
    NotClosed,
    NoUnitPivot,
    ShapeMismatch,
    SkewDegenerate,
    SymmetrizeFailed,
)
from .groebner import Ideal, Submodule, annihilator_of_cokernel
from .polymat import colex, erase_first_row, minor
from .resolution import (
    check_acyclic_minimal,
    graded_twist_check,
    heart_check,
    koszul_check,
    locate_symmetry_violation,
    symmetrize,
    symmetry_check,
)

RANDOM_ATTEMPTS = 32


@dataclass
class ConductorData:
    annihilator: Ideal
    conductor: Ideal
    d: object
    a_coeffs: list
    provenance: str = ""


@dataclass
class MultiplicationTable:
    n: int
    constants: list  # constants[i][j] = coordinates of r_i r_j (0-based)
    certificate: ConductorData
    identity_index: int = 1

    def product(self, i, j):
        return self.constants[i][j]

    def to_dict(self):
        cert = self.certificate
        return {
            "n": self.n,
            "identity": self.identity_index,
            "d": str(cert.d),
            "d_provenance": cert.provenance,
            "a": [str(a) for a in cert.a_coeffs],
            "c": [[[str(f) for f in v] for v in row] for row in self.constants],
            "annihilator": [str(g) for g in cert.annihilator.groebner_basis()],
            "conductor": [str(g) for g in cert.conductor.generators],
        }


def _image(phi):
    return Submodule(phi.ring, phi.nrows, phi.columns())


def _unit(ring, n, i, scale=None):
    v = [ring.zero] * n
    v[i] = ring.one if scale is None else scale
    return v


def conductor(phi, annihilator=None):
    """Ann(coker phi') + Ann R, an ideal of A whose image in A/Ann R is C."""
    if phi.nrows == 0:
        raise EmptyMatrix("conductor of a matrix without rows")
    ann = annihilator if annihilator is not None else annihilator_of_cokernel(phi)
    phi1 = erase_first_row(phi)
    if phi1.nrows == 0:
        return Ideal(phi.ring, [phi.ring.one])
    return annihilator_of_cokernel(phi1) + ann


def is_regular_on(d, phi, annihilator):
    """(im phi : d) = im phi and (Ann : d) = Ann."""
    if not d:
        return False
    im = _image(phi)
    if not im.quotient(d).is_subset(im):
        return False
    return annihilator.quotient(d).is_subset(annihilator)


def _candidates(phi, seed):
    ring = phi.ring
    phi1 = erase_first_row(phi)
    if phi1.nrows == 0:
        yield ring.one, "I' = (1)"
        return
    k = phi1.nrows
    minors = []
    for cs in colex(phi1.ncols, k):
        m = minor(phi1, range(k), cs)
        if m and all(m.monic() != x.monic() for x, _ in minors):
            minors.append((m, "minor cols " + ",".join(str(c + 1) for c in cs)))
    yield from minors
    rng = random.Random(seed)
    char = ring.field.characteristic
    for t in range(RANDOM_ATTEMPTS):
        coeffs = []
        for _ in minors:
            c = rng.randrange(1, char) if char else rng.randint(-9, 9)
            coeffs.append(c)
        f = ring.zero
        for c, (m, _) in zip(coeffs, minors):
            f = f + m.scale(c)
        if f:
            yield f, f"random combination #{t + 1} {coeffs}"


def find_regular_element(phi, annihilator=None, seed=0, exclude=()):
    """First candidate in I' that is a nonzerodivisor on R and on A/Ann R."""
    ann = annihilator if annihilator is not None else annihilator_of_cokernel(phi)
    excluded = {f.monic() for f in exclude if f}
    for f, how in _candidates(phi, seed):
        if f.monic() in excluded:
            continue
        if is_regular_on(f, phi, ann):
            return f, how
    raise NoRegularElementFound("no regular element of I' among the minors and random combinations")


def conductor_data(phi, d=None, seed=0, annihilator=None, exclude=()):
    ring = phi.ring
    ann = annihilator if annihilator is not None else annihilator_of_cokernel(phi)
    if d is None:
        d, how = find_regular_element(phi, ann, seed, exclude)
    else:
        d = ring.coerce(d)
        if not is_regular_on(d, phi, ann):
            raise NoRegularElementFound(f"{d} is not a nonzerodivisor on R")
        how = "caller supplied"
    n = phi.nrows
    lift_mod = Submodule(ring, n, phi.columns() + [_unit(ring, n, 0)])
    a = []
    for i in range(n):
        c = lift_mod.lift(_unit(ring, n, i, d))
        if c is None:
            raise NotClosed(f"d e_{i + 1} is not in A e + im(phi)", pair=(i + 1,))
        a.append(c[-1])
    return ConductorData(ann, conductor(phi, ann), d, a, how)


def build_multiplication(phi, d=None, seed=0, exclude=()):
    """Structure constants of R, or NotClosed when R is not a ring this way."""
    ring = phi.ring
    n = phi.nrows
    cert = conductor_data(phi, d, seed, exclude=exclude)
    d2 = cert.d * cert.d
    im = _image(phi)
    lift_mod = Submodule(ring, n, phi.columns() + [_unit(ring, n, k, d2) for k in range(n)])
    m = phi.ncols
    c = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            target = _unit(ring, n, 0, cert.a_coeffs[i] * cert.a_coeffs[j])
            coeffs = lift_mod.lift(target)
            if coeffs is None:
                raise NotClosed(f"r_{i + 1} r_{j + 1} is not an A-combination of the generators",
                                pair=(i + 1, j + 1))
            vec = list(im.normal_form(coeffs[m:]))
            c[i][j] = vec
            c[j][i] = vec
    return MultiplicationTable(n, c, cert)


def _mul_vec(table, u, v):
    """Product of two elements given by coordinate vectors."""
    ring = table.certificate.d.ring
    n = table.n
    out = [ring.zero] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            s = u[i] * v[j]
            for k, f in enumerate(table.constants[i][j]):
                if f:
                    out[k] = out[k] + s * f
    return out


def verify_ring_axioms(table, phi, check_uniqueness=True, seed=0):
    """Re-check the table modulo im(phi); raise AxiomViolation on the first failure."""
    ring = phi.ring
    n = table.n
    im = _image(phi)
    cert = table.certificate
    d2 = cert.d * cert.d
    e = [_unit(ring, n, k) for k in range(n)]

    def same(u, v):
        return im.contains([a - b for a, b in zip(u, v)])

    report = {"definition": True, "commutative": True, "identity": True,
              "associative_triples": 0, "uniqueness": None}
    for i in range(n):
        lhs = _unit(ring, n, i, cert.d)
        if not same(lhs, _unit(ring, n, 0, cert.a_coeffs[i])):
            raise AxiomViolation(f"d e_{i + 1} != a_{i + 1} e", where=("a", i + 1))
    for i in range(n):
        for j in range(n):
            lhs = _unit(ring, n, 0, cert.a_coeffs[i] * cert.a_coeffs[j])
            rhs = [d2 * f for f in table.constants[i][j]]
            if not same(lhs, rhs):
                raise AxiomViolation(f"product r_{i + 1} r_{j + 1} fails its defining identity",
                                     where=("product", i + 1, j + 1))
            if not same(table.constants[i][j], table.constants[j][i]):
                raise AxiomViolation(f"r_{i + 1} r_{j + 1} != r_{j + 1} r_{i + 1}",
                                     where=("commutative", i + 1, j + 1))
    for j in range(n):
        if not same(table.constants[0][j], e[j]):
            raise AxiomViolation(f"e r_{j + 1} != r_{j + 1}", where=("identity", j + 1))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = _mul_vec(table, table.constants[i][j], e[k])
                right = _mul_vec(table, e[i], table.constants[j][k])
                if not same(left, right):
                    raise AxiomViolation(f"associativity fails on ({i + 1},{j + 1},{k + 1})",
                                         where=("associative", i + 1, j + 1, k + 1))
                report["associative_triples"] += 1
    if check_uniqueness:
        try:
            other = build_multiplication(phi, seed=seed, exclude=[cert.d])
        except NoRegularElementFound:
            other = None
        if other is not None:
            for i in range(n):
                for j in range(n):
                    if not same(table.constants[i][j], other.constants[i][j]):
                        raise AxiomViolation(
                            f"tables for d = {cert.d} and d' = {other.certificate.d} differ at ({i + 1},{j + 1})",
                            where=("uniqueness", i + 1, j + 1))
            report["uniqueness"] = {"d_prime": str(other.certificate.d), "agree": True}
    return report


# ---------------------------------------------------------------------------
# full pipeline


def _depth_str(d):
    return "inf" if d == math.inf else d


def _is_homogeneous_input(res):
    return all(f.is_homogeneous() for M in (res.phi, res.psi) for r in M.rows for f in r if f)


def gorenstein_diagnose(res, u=None, seed=0):
    """Run every stage and aggregate a verdict.

    The verdict is certified when the complex is an acyclic minimal resolution
    of a codimension-two module, the heart condition holds, the resolution is
    symmetric (or was symmetrized from ``u``), and the ring axioms check out.
    """
    stages = {}
    gates = []
    if not res.is_complex():
        raise ComplexNotZero("phi * psi is not zero")

    acyc = check_acyclic_minimal(res)
    stages["acyclicity"] = acyc.to_dict()
    if not (acyc.acyclic and acyc.minimal and acyc.codim2):
        gates.append("acyclicity")

    heart = heart_check(res.phi)
    stages["heart_check"] = heart.to_dict()
    if not heart.holds:
        gates.append("heart_check")

    sym = None
    try:
        sym = symmetry_check(res)
        where = None if sym is not None else locate_symmetry_violation(res)
    except ShapeMismatch as exc:
        where = str(exc)
    sym_stage = {"symmetric": sym is not None}
    if sym is None:
        sym_stage["violation"] = where
        sym_stage["note"] = "not in symmetric form"
        if u is not None and acyc.acyclic:
            try:
                out = symmetrize(res, u)
                sym = out.resolution
                sym_stage["symmetrized"] = True
                sym_stage["alpha"] = sym.alpha.to_strings()
                sym_stage["beta"] = sym.beta.to_strings()
            except (NotAnIsomorphism, SymmetrizeFailed, SkewDegenerate, NoUnitPivot, ShapeMismatch) as exc:
                sym_stage["symmetrize_error"] = f"{type(exc).__name__}: {exc}"
    stages["symmetry"] = sym_stage
    if sym is None:
        gates.append("symmetry")

    if sym is not None:
        stages["koszul"] = koszul_check(sym).to_dict()

    ring_stage = {}
    if acyc.acyclic and acyc.codim2:
        try:
            table = build_multiplication(res.phi, seed=seed)
            ring_stage["table"] = table.to_dict()
            ring_stage["table"]["witnesses"] = table_witnesses(table, res.phi)
            ring_stage["axioms"] = verify_ring_axioms(table, res.phi, seed=seed)
            ring_stage["closed"] = True
        except NotClosed as exc:
            ring_stage.update(closed=False, error=f"NotClosed: {exc}", pair=exc.pair)
        except NoRegularElementFound as exc:
            ring_stage.update(closed=False, error=f"NoRegularElementFound: {exc}")
        except AxiomViolation as exc:
            ring_stage.update(closed=True, error=f"AxiomViolation: {exc}", where=exc.where)
    else:
        ring_stage["skipped"] = "complex is not an acyclic codimension-two resolution"
    stages["ring"] = ring_stage
    if "axioms" not in ring_stage:
        gates.append("ring")

    twist = None
    if res.grading is not None:
        try:
            tw = graded_twist_check(res)
            twist = tw.twist
            stages["graded"] = tw.to_dict()
        except InhomogeneousEntry as exc:
            stages["graded"] = {"homogeneous": False, "location": exc.location, "error": str(exc)}

    certified = not gates
    if certified:
        verdict = "certified Gorenstein algebra of codimension 2"
        if twist is not None:
            verdict += f" (twist {twist})"
    else:
        verdict = "not certified"
    report = {
        "verdict": verdict,
        "certified": certified,
        "failing_gates": gates,
        "stages": stages,
    }
    if not _is_homogeneous_input(res):
        report["semantics"] = "at-origin"
    return report


def table_witnesses(table, phi):
    """Coefficients w with (claimed identity) = phi w for every table entry."""
    ring = phi.ring
    n = table.n
    im = _image(phi)
    cert = table.certificate
    d2 = cert.d * cert.d

    def lift(vec):
        w = im.lift(vec)
        return None if w is None else [str(f) for f in w]

    a = []
    for i in range(n):
        vec = [x - y for x, y in zip(_unit(ring, n, i, cert.d), _unit(ring, n, 0, cert.a_coeffs[i]))]
        a.append(lift(vec))
    c = {}
    for i in range(n):
        for j in range(n):
            lhs = _unit(ring, n, 0, cert.a_coeffs[i] * cert.a_coeffs[j])
            vec = [x - d2 * y for x, y in zip(lhs, table.constants[i][j])]
            c[f"{i + 1},{j + 1}"] = lift(vec)
    return {"a": a, "c": c}
