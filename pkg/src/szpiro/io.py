"""Problem files and report serialization (JSON, polynomials as strings)."""

import json
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, ShapeMismatch
from .poly import PolyRing
from .polymat import PolyMatrix
from .resolution import FreeResolution, GradedData


@dataclass
class Problem:
    ring: PolyRing
    phi: PolyMatrix
    psi: Optional[PolyMatrix] = None
    grading: Optional[GradedData] = None
    u: Optional[PolyMatrix] = None
    hints: Optional[list] = None
    seed: Optional[int] = None
    raw: Optional[dict] = None

    def resolution(self):
        if self.psi is None:
            raise InputError("problem has no psi matrix")
        return FreeResolution(self.ring, self.phi, self.psi, self.grading)


def ring_from_dict(d):
    if not isinstance(d, dict) or "variables" not in d:
        raise InputError("ring must be an object with a 'variables' list")
    return PolyRing(d["variables"], d.get("field", "Q"), d.get("order", "grevlex"))


def ring_to_dict(ring):
    field = "Q" if ring.field.characteristic == 0 else f"Fp:{ring.field.characteristic}"
    return {"variables": list(ring.variables), "field": field, "order": ring.order}


def matrix_from_json(ring, rows, ncols=None):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrices are lists of rows")
    return PolyMatrix.from_strings(ring, [[str(x) for x in r] for r in rows], ncols)


def problem_from_dict(d):
    if not isinstance(d, dict):
        raise InputError("problem file must hold a JSON object")
    if "phi" not in d:
        raise InputError("problem file has no 'phi'")
    ring = ring_from_dict(d.get("ring"))
    phi = matrix_from_json(ring, d["phi"], d.get("phi_cols"))
    psi = matrix_from_json(ring, d["psi"]) if d.get("psi") is not None else None
    if psi is not None and phi.ncols != psi.nrows:
        raise ShapeMismatch(f"phi has {phi.ncols} columns but psi has {psi.nrows} rows")
    grading = None
    if d.get("grading") is not None:
        g = d["grading"]
        try:
            grading = GradedData([int(v) for v in g["q_degrees"]], [int(v) for v in g["r_degrees"]],
                                 [int(v) for v in g["s_degrees"]], None,
                                 [int(v) for v in g["weights"]] if g.get("weights") else None)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad grading block: {exc}") from exc
    u = matrix_from_json(ring, d["u"]) if d.get("u") is not None else None
    hints = [ring.coerce(str(h)) for h in d["factor_hints"]] if d.get("factor_hints") else None
    seed = d.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise InputError("seed must be an integer")
    return Problem(ring, phi, psi, grading, u, hints, seed, d)


def load_problem(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return problem_from_dict(data)


def problem_to_dict(ring, phi, psi=None, grading=None, u=None):
    d = {"ring": ring_to_dict(ring), "phi": phi.to_strings(), "phi_cols": phi.ncols}
    if psi is not None:
        d["psi"] = psi.to_strings()
    if grading is not None:
        d["grading"] = grading.to_dict()
    if u is not None:
        d["u"] = u.to_strings()
    return d


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False, default=str)
