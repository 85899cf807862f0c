"""Base changes on A^(2n) that make det(alpha), det(beta) a regular sequence.

Ideals to avoid are given as prime oracles: membership predicates plus a way
to produce elements lying in some oracles but outside another.  Over a
polynomial ring, phase one uses the single oracle (0); phase two uses one
oracle per square-free block of det(alpha).  Blocks need not be prime, so the
final certificate is always a gcd computation, and failed steps trigger a
refinement of the blocks.
"""

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    CharTwo,
    HintProductMismatch,
    HintsNotCoprime,
    NoMinorOutsideIdeal,
    SmallFieldExhausted,
    StepVerificationFailed,
    VerificationFailed,
)
from .poly import Poly, gcd, is_unit, squarefree_split
from .polymat import (
    BaseChange,
    MinorIndex,
    PolyMatrix,
    alpha_plus_beta,
    apply_base_change,
    beta_plus_alpha,
    colex,
    column_op,
    determinant,
    maximal_minors,
    paired_op,
    pluecker_sum,
)

REFINE_BUDGET = 4


@dataclass
class PrimeOracle:
    label: str
    membership: Callable
    generator: Optional[Poly] = None

    def __call__(self, f):
        return self.membership(f)

    def avoid_elements(self, others, ring, rng=None, tries=8):
        """Elements in every oracle of ``others`` but outside this one."""
        prod = ring.one
        for o in others:
            if o.generator is None:
                return
            prod = prod * o.generator
        yield prod
        rng = rng or random.Random(0)
        char = ring.field.characteristic
        for _ in range(tries):
            lin = ring.one
            for v in ring.gens:
                c = rng.randrange(char) if char else rng.randint(-5, 5)
                lin = lin + v.scale(c)
            yield prod * lin


def zero_oracle(ring):
    return PrimeOracle("(0)", lambda f: not f, None)


def block_oracle(block):
    block = block.monic()
    return PrimeOracle(f"({block})", lambda f: not is_unit(gcd(f, block)), block)


def default_oracles(det_alpha=None, hints=None, ring=None):
    """Phase one: [(0)].  Phase two: one oracle per square-free block of det(alpha)."""
    if det_alpha is None:
        if ring is None:
            raise ValueError("ring needed for the phase-one oracle")
        return [zero_oracle(ring)]
    ring = det_alpha.ring
    if hints:
        hints = [ring.coerce(h) for h in hints]
        prod = ring.one
        for h in hints:
            prod = prod * h
        if not det_alpha or prod.monic() != det_alpha.monic():
            raise HintProductMismatch(f"hints multiply to {prod}, not det(alpha) = {det_alpha}")
        for i in range(len(hints)):
            for j in range(i + 1, len(hints)):
                if not is_unit(gcd(hints[i], hints[j])):
                    raise HintsNotCoprime(f"hints {hints[i]} and {hints[j]} share a factor")
        blocks = [h for h in hints if not h.is_constant()]
    else:
        blocks = [f for f, _ in squarefree_split(det_alpha) if not f.is_constant()]
    return [block_oracle(b) for b in blocks]


@dataclass
class RegularizeReport:
    base_change: BaseChange
    det_alpha: Poly
    det_beta: Optional[Poly]
    verified: bool
    steps: list = field(default_factory=list)
    gcd: Optional[Poly] = None
    matrix: Optional[PolyMatrix] = None

    def to_dict(self):
        return {
            "base_change": self.base_change.matrix.to_strings(),
            "symplectic": self.base_change.symplectic,
            "steps": self.steps,
            "det_alpha": str(self.det_alpha),
            "det_beta": None if self.det_beta is None else str(self.det_beta),
            "gcd": None if self.gcd is None else str(self.gcd),
            "verified": self.verified,
            "matrix": None if self.matrix is None else self.matrix.to_strings(),
        }


def _pick_avoid(oracle, others, ring, rng):
    for b in oracle.avoid_elements(others, ring, rng):
        if b and not oracle(b) and all(o(b) for o in others):
            return b
    raise SmallFieldExhausted(f"no element avoiding {oracle.label} inside the other ideals")


def _outside(M, oracle):
    """(cols, value) of the maximal minors outside the oracle, lex order of cols."""
    out = []
    for cols, v in sorted(maximal_minors(M).items()):
        if not oracle(v):
            out.append((cols, v))
    return out


def _det_alpha(M):
    n = M.nrows
    return determinant(M.select_columns(range(n)))


def _det_beta(M):
    n = M.nrows
    return determinant(M.select_columns(range(n, 2 * n)))


def _pluecker_check(M, idx, H, L):
    """The relation behind the descent step must vanish on the current matrix."""
    n = M.nrows
    a = [i - 1 for i in idx.alpha_cols if i != H] + [n + j - 1 for j in idx.beta_cols if j != H]
    c = [H - 1, n + H - 1, L - 1, n + L - 1] + a
    value = pluecker_sum(M, a, [], c)
    if value:
        raise StepVerificationFailed(f"Plücker relation does not vanish: {value}")


def find_good_minor(M, oracle, symmetric=True, zeta=1, preserve=(), check_pluecker=False, log=None):
    """A good minor outside the oracle, reached by paired base changes.

    Returns (MinorIndex, BaseChange, transformed matrix).  Each step picks a
    minor outside the oracle whose alpha and beta index sets overlap least,
    adds zeta alpha_H to beta_L and zeta alpha_L to beta_H, and checks that the
    minor [I - H; J + L] of the new matrix is still outside the oracle.
    ``preserve`` lists oracles that det(beta) must keep avoiding.
    """
    ring = M.ring
    n = M.nrows
    E = BaseChange.identity(ring, 2 * n, symplectic=symmetric)
    for _ in range(n + 1):
        outside = _outside(M, oracle)
        if not outside:
            raise NoMinorOutsideIdeal(f"every maximal minor lies in {oracle.label}")
        ranked = [(len(MinorIndex.from_columns(c, n).overlap), c) for c, _ in outside]
        best = min(ranked, key=lambda t: t[0])[0]
        if best == 0:
            cols = next(c for k, c in ranked if k == 0)
            return MinorIndex.from_columns(cols, n), E, M
        cols = next(c for k, c in ranked if k == best)
        idx = MinorIndex.from_columns(cols, n)
        H = min(idx.overlap)
        L = min(set(range(1, n + 1)) - set(idx.alpha_cols) - set(idx.beta_cols))
        if check_pluecker:
            _pluecker_check(M, idx, H, L)
        op = paired_op(ring, n, H, L, zeta)
        before = idx.value(M)
        M = apply_base_change(M, op)
        nxt = MinorIndex(tuple(i for i in idx.alpha_cols if i != H), idx.beta_cols + (L,))
        after = nxt.value(M)
        if oracle(after):
            raise StepVerificationFailed(f"minor {nxt} fell into {oracle.label} after the paired step")
        db = _det_beta(M)
        for o in preserve:
            if o(db):
                raise StepVerificationFailed(f"det(beta) fell into {o.label} after the paired step")
        E = E.then(op)
        if log is not None:
            log.append({"kind": "paired", "H": H, "L": L, "zeta": str(ring.coerce(zeta)),
                        "minor_before": f"{idx} = {before}", "minor_after": f"{nxt} = {after}",
                        "oracle": oracle.label})
    raise StepVerificationFailed("descent did not terminate within n steps")


def _colex_min_outside(M, oracle, good_only):
    n = M.nrows
    mm = maximal_minors(M)
    for cols in colex(2 * n, n):
        if good_only and not MinorIndex.from_columns(cols, n).is_good:
            continue
        if not oracle(mm[cols]):
            return cols
    return None


def _lex_max_outside_good(M, oracle):
    n = M.nrows
    mm = maximal_minors(M)
    for cols in sorted(mm, reverse=True):
        if MinorIndex.from_columns(cols, n).is_good and not oracle(mm[cols]):
            return cols
    return None


def regularize_tau1(M, oracles=None, seed=0):
    """General column operations making det of the first n columns avoid every oracle."""
    ring = M.ring
    n = M.nrows
    if M.ncols != 2 * n:
        raise ValueError(f"expected an n x 2n matrix, got {M.shape}")
    oracles = oracles or [zero_oracle(ring)]
    rng = random.Random(seed)
    E = BaseChange.identity(ring, 2 * n, symplectic=False)
    steps, handled = [], []
    for o in oracles:
        before = _det_alpha(M)
        if not o(before):
            handled.append(o)
            continue
        cols = _colex_min_outside(M, o, good_only=False)
        if cols is None:
            raise NoMinorOutsideIdeal(f"every maximal minor lies in {o.label}")
        ls = sorted((c + 1 for c in cols), reverse=True)  # l_1 > l_2 > ... > l_n
        big = [l for l in ls if l > n]
        J = len(big)
        y = sorted(set(range(1, n + 1)) - {l for l in ls if l <= n})
        b = _pick_avoid(o, handled, ring, rng)
        for nu in range(1, J + 1):
            op = column_op(ring, 2 * n, y[nu - 1], ls[J - nu], b)
            M = apply_base_change(M, op)
            E = E.then(op)
        after = _det_alpha(M)
        if o(after) or any(h(after) for h in handled):
            raise StepVerificationFailed(f"det(tau1) = {after} still lies in a forbidden ideal")
        steps.append({"kind": "lemma_l_selection", "oracle": o.label, "l": ls, "J": J, "y": y,
                      "b": str(b), "minor_before": str(before), "minor_after": str(after)})
        handled.append(o)
    return RegularizeReport(E, _det_alpha(M), None, True, steps, None, M)


def _phase_one(M, check_pluecker, steps):
    ring = M.ring
    n = M.nrows
    o = zero_oracle(ring)
    E = BaseChange.identity(ring, 2 * n)
    before = _det_alpha(M)
    if before:
        return M, E
    _, E1, M = find_good_minor(M, o, True, 1, (), check_pluecker, steps)
    E = E.then(E1)
    cols = _colex_min_outside(M, o, good_only=True)
    idx = MinorIndex.from_columns(cols, n)
    b = ring.one
    for j in idx.beta_cols:
        op = alpha_plus_beta(ring, n, j, b)
        M = apply_base_change(M, op)
        E = E.then(op)
    after = _det_alpha(M)
    if not after:
        raise StepVerificationFailed("det(alpha) is still zero after phase one")
    steps.append({"kind": "alpha_plus_beta", "l": str(idx), "columns": list(idx.beta_cols), "b": str(b),
                  "minor_before": str(before), "minor_after": str(after), "oracle": o.label})
    return M, E


def _phase_two(M, oracles, check_pluecker, steps):
    ring = M.ring
    n = M.nrows
    E = BaseChange.identity(ring, 2 * n)
    det_a = _det_alpha(M)
    handled = []
    for q in oracles:
        before = _det_beta(M)
        if not q(before):
            handled.append(q)
            continue
        others = [o for o in oracles if o is not q]
        zeta = ring.one
        for o in others:
            zeta = zeta * o.generator
        if q(zeta):
            raise SmallFieldExhausted(f"blocks are not coprime to {q.label}")
        _, E1, M = find_good_minor(M, q, True, zeta, handled, check_pluecker, steps)
        E = E.then(E1)
        cols = _lex_max_outside_good(M, q)
        if cols is None:
            raise NoMinorOutsideIdeal(f"no good minor outside {q.label}")
        idx = MinorIndex.from_columns(cols, n)
        mid = _det_beta(M)
        for j in idx.alpha_cols:
            op = beta_plus_alpha(ring, n, j, zeta)
            M = apply_base_change(M, op)
            E = E.then(op)
            if _det_alpha(M) != det_a:
                raise StepVerificationFailed("a phase-two step changed det(alpha)")
        after = _det_beta(M)
        if q(after) or any(h(after) for h in handled):
            raise StepVerificationFailed(f"det(beta) = {after} still meets a forbidden ideal")
        steps.append({"kind": "beta_plus_alpha", "L": str(idx), "columns": list(idx.alpha_cols),
                      "b": str(zeta), "minor_before": str(mid), "minor_after": str(after),
                      "oracle": q.label})
        handled.append(q)
    return M, E


def _refine(blocks, g):
    """Split each block along g; returns None when nothing changes."""
    out, changed = [], False
    for b in blocks:
        h = gcd(b, g)
        if is_unit(h) or h.monic() == b.monic():
            out.append(b)
            continue
        out.extend([h, b.exact_div(h)])
        changed = True
    return out if changed else None


def regularize_symmetric(sym, hints=None, seed=0, check_pluecker=False, budget=REFINE_BUDGET):
    """Symplectic base change after which det(alpha), det(beta) is a regular sequence."""
    ring = sym.ring
    if ring.field.characteristic == 2:
        raise CharTwo("the descent step divides by 2")
    n = sym.n
    M = sym.phi
    steps = []
    M1, E = _phase_one(M, check_pluecker, steps)
    det_a = _det_alpha(M1)
    blocks = [o.generator for o in default_oracles(det_a, hints)]
    phase1_steps = list(steps)
    g = None
    for _ in range(budget + 1):
        steps = list(phase1_steps)
        M2, E2 = M1, BaseChange.identity(ring, 2 * n)
        try:
            M2, E2 = _phase_two(M1, [block_oracle(b) for b in blocks], check_pluecker, steps)
        except (StepVerificationFailed, NoMinorOutsideIdeal) as exc:
            steps.append({"kind": "failure", "error": f"{type(exc).__name__}: {exc}"})
        det_b = _det_beta(M2)
        g = gcd(det_a, det_b)
        if is_unit(g):
            total = E.then(E2)
            if M @ total.matrix != M2:
                raise StepVerificationFailed("accumulated base change does not reproduce the matrix")
            return RegularizeReport(total, det_a, det_b, True, steps, g, M2)
        refined = _refine(blocks, g)
        if refined is None:
            break
        blocks = refined
    total = E.then(E2)
    report = RegularizeReport(total, det_a, det_b, False, steps, g, M2)
    raise VerificationFailed(f"gcd(det alpha, det beta) = {g} is not a unit", gcd=g, report=report)
