"""Command-line front end.

Exit codes: 0 certified/ok, 1 a property fails, 2 input error, 3 resource limit.
"""

import argparse
import json
import os
import sys

from .errors import (
    ComplexNotZero,
    InputError,
    NoMinorOutsideIdeal,
    NoRegularElementFound,
    NotAnIsomorphism,
    NotClosed,
    ResourceLimit,
    SkewDegenerate,
    SmallFieldExhausted,
    StepVerificationFailed,
    SymmetrizeFailed,
    AxiomViolation,
    NoUnitPivot,
    SzpiroError,
    VerificationFailed,
)
from .io import dumps, load_problem, problem_to_dict
from .polymat import is_split_symmetric
from .regularizer import regularize_symmetric, regularize_tau1
from .resolution import SymmetricResolution, check_acyclic_minimal, symmetrize
from .ring_builder import build_multiplication, gorenstein_diagnose, table_witnesses, verify_ring_axioms
from .selftest import run_selftest
from .verify import verify_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _problem_block(prob):
    return problem_to_dict(prob.ring, prob.phi, prob.psi, prob.grading, prob.u)


def _seed(args, prob=None):
    if args.seed is not None:
        return args.seed
    if prob is not None and prob.seed is not None:
        return prob.seed
    return 0


def run_diagnose(prob, seed=0):
    res = prob.resolution()
    out = {"kind": "diagnose", "problem": _problem_block(prob)}
    try:
        out["report"] = gorenstein_diagnose(res, u=prob.u, seed=seed)
    except ComplexNotZero as exc:
        out["error"] = f"ComplexNotZero: {exc}"
        return out, EXIT_FAIL
    return out, EXIT_OK if out["report"]["certified"] else EXIT_FAIL


def run_ring(prob, seed=0):
    out = {"kind": "ring", "problem": _problem_block(prob), "table": None}
    if prob.psi is not None:
        res = prob.resolution()
        try:
            acyc = check_acyclic_minimal(res)
        except ComplexNotZero as exc:
            out["error"] = f"ComplexNotZero: {exc}"
            return out, EXIT_FAIL
        out["acyclicity"] = acyc.to_dict()
        if not (acyc.acyclic and acyc.codim2):
            out["error"] = "complex is not an acyclic codimension-two resolution"
            return out, EXIT_FAIL
    try:
        table = build_multiplication(prob.phi, seed=seed)
    except NotClosed as exc:
        out["error"] = f"NotClosed: {exc}"
        out["pair"] = exc.pair
        return out, EXIT_FAIL
    except NoRegularElementFound as exc:
        out["error"] = f"NoRegularElementFound: {exc}"
        return out, EXIT_FAIL
    out["table"] = table.to_dict()
    out["table"]["witnesses"] = table_witnesses(table, prob.phi)
    try:
        out["axioms"] = verify_ring_axioms(table, prob.phi, seed=seed)
    except AxiomViolation as exc:
        out["error"] = f"AxiomViolation: {exc}"
        out["where"] = exc.where
        return out, EXIT_FAIL
    return out, EXIT_OK


def run_regularize(prob, hints=None, seed=0):
    out = {"kind": "regularize", "problem": _problem_block(prob), "report": None}
    M = prob.phi
    if M.ncols != 2 * M.nrows:
        raise InputError(f"regularize needs an n x 2n matrix, got {M.nrows} x {M.ncols}")
    hints = hints if hints is not None else prob.hints
    try:
        if is_split_symmetric(M):
            out["mode"] = "symmetric"
            rep = regularize_symmetric(SymmetricResolution.from_matrix(M), hints=hints, seed=seed)
        else:
            out["mode"] = "tau1"
            rep = regularize_tau1(M, seed=seed)
    except VerificationFailed as exc:
        out["error"] = f"VerificationFailed: {exc}"
        out["gcd"] = str(exc.gcd)
        if exc.report is not None:
            out["report"] = exc.report.to_dict()
        return out, EXIT_FAIL
    except (NoMinorOutsideIdeal, StepVerificationFailed, SmallFieldExhausted) as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        return out, EXIT_FAIL
    out["report"] = rep.to_dict()
    return out, EXIT_OK if rep.verified else EXIT_FAIL


def run_symmetrize(prob):
    out = {"kind": "symmetrize", "problem": _problem_block(prob), "result": None}
    if prob.u is None:
        raise InputError("symmetrize needs an isomorphism 'u' in the problem file")
    res = prob.resolution()
    try:
        r = symmetrize(res, prob.u)
    except (NotAnIsomorphism, SymmetrizeFailed, SkewDegenerate, NoUnitPivot, ComplexNotZero) as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        return out, EXIT_FAIL
    out["result"] = {
        "alpha": r.resolution.alpha.to_strings(),
        "beta": r.resolution.beta.to_strings(),
        "psi": r.resolution.psi.to_strings(),
        "B": r.B.matrix.to_strings(),
        "skew": r.skew.to_strings(),
        "f2": r.f2.to_strings(),
        "f3": r.f3.to_strings(),
    }
    return out, EXIT_OK


def run_verify(path):
    try:
        with open(path) as fh:
            rep = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read report {path}: {exc}") from exc
    if not isinstance(rep, dict) or "problem" not in rep:
        raise InputError("not a report produced by this tool")
    checks = verify_report(rep)
    failures = [c for c in checks if not c["ok"]]
    out = {"kind": "verify", "report_kind": rep.get("kind"), "checks": len(checks),
           "failures": failures, "details": checks}
    return out, EXIT_OK if not failures else EXIT_FAIL


def run_selftest_cmd(quick, seed, inject_fault):
    results, elapsed = run_selftest(quick=quick, seed=seed, inject_fault=inject_fault)
    out = {"kind": "selftest", "seconds": round(elapsed, 2),
           "results": [{"name": n, "ok": ok, "detail": d} for n, ok, d in results]}
    return out, EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for randomized searches")
    common.add_argument("--max-spairs", type=int, default=None, help="S-pair budget for Gröbner bases")
    common.add_argument("--json-out", default=None, help="also write the JSON report to this path")

    p = argparse.ArgumentParser(prog="szpiro", description="Certificates for codimension-two Gorenstein algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in [("diagnose", "run the full pipeline on a problem file"),
                           ("ring", "build and check the multiplication table"),
                           ("symmetrize", "symmetrize a resolution using the isomorphism u")]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("path")
    sp = sub.add_parser("regularize", parents=[common], help="make det(alpha), det(beta) a regular sequence")
    sp.add_argument("path")
    sp.add_argument("--hints", default=None, help="comma-separated factor hints for det(alpha)")
    sp = sub.add_parser("selftest", parents=[common], help="run the seeded property suites")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--inject-fault", action="store_true", help="corrupt one check to exercise failure paths")
    sp = sub.add_parser("verify", parents=[common], help="re-check a report produced by another command")
    sp.add_argument("path")
    return p


def _emit(out, path):
    text = dumps(out)
    print(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_spairs is not None:
        os.environ["SZPIRO_MAX_SPAIRS"] = str(args.max_spairs)
    try:
        if args.command == "selftest":
            out, code = run_selftest_cmd(args.quick, _seed(args), args.inject_fault)
        elif args.command == "verify":
            out, code = run_verify(args.path)
        else:
            prob = load_problem(args.path)
            seed = _seed(args, prob)
            if args.command == "diagnose":
                out, code = run_diagnose(prob, seed)
            elif args.command == "ring":
                out, code = run_ring(prob, seed)
            elif args.command == "regularize":
                hints = None
                if args.hints:
                    hints = [prob.ring.coerce(h.strip()) for h in args.hints.split(",") if h.strip()]
                out, code = run_regularize(prob, hints, seed)
            else:
                out, code = run_symmetrize(prob)
    except ResourceLimit as exc:
        out, code = {"error": f"ResourceLimit: {exc}"}, EXIT_LIMIT
    except InputError as exc:
        out, code = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_INPUT
    except SzpiroError as exc:
        out, code = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_FAIL
    out["exit_code"] = code
    _emit(out, args.json_out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
