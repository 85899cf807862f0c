"""Canonical small examples, as problem dictionaries in the JSON file format."""

import copy

RING4 = {"variables": ["x", "y", "z", "w"], "field": "Q", "order": "grevlex"}

_FIXTURES = {
    # Koszul complex of x, y
    "E1": {
        "ring": RING4,
        "phi": [["x", "y"]],
        "psi": [["-y"], ["x"]],
        "grading": {"q_degrees": [0], "r_degrees": [1, 1], "s_degrees": [2]},
        "u": [["1"]],
    },
    # k[s, t^2, t^3, s t] with R generated by 1 and t; naive column order
    "E2": {
        "ring": RING4,
        "phi": [["-y^2", "z", "-w", "-x*y"], ["z", "-y", "x", "w"]],
        "psi": [["w", "-x"], ["-x*y", "w"], ["-y^2", "z"], ["-z", "y"]],
        "grading": {"weights": [1, 2, 3, 2], "q_degrees": [0, 1], "r_degrees": [4, 3, 2, 3],
                    "s_degrees": [6, 5]},
    },
    # same module, columns reordered into symmetric form
    "E2sym": {
        "ring": RING4,
        "phi": [["-y^2", "-x*y", "-w", "z"], ["z", "w", "x", "-y"]],
        "psi": [["w", "-x"], ["-z", "y"], ["-y^2", "z"], ["-x*y", "w"]],
        "grading": {"weights": [1, 2, 3, 2], "q_degrees": [0, 1], "r_degrees": [4, 3, 2, 3],
                    "s_degrees": [6, 5]},
    },
    # alpha symmetric, beta = w I: symmetric and Koszul, heart fails
    "E3": {
        "ring": RING4,
        "phi": [["x", "y", "w", "0"], ["y", "z", "0", "w"]],
        "psi": [["-w", "0"], ["0", "-w"], ["x", "y"], ["y", "z"]],
        "grading": {"q_degrees": [0, 0], "r_degrees": [1, 1, 1, 1], "s_degrees": [2, 2]},
    },
    # symmetric but not exact: all 2-minors of psi are divisible by w
    "degenerate": {
        "ring": RING4,
        "phi": [["x", "x", "w", "0"], ["x", "x", "0", "w"]],
        "psi": [["-w", "0"], ["0", "-w"], ["x", "x"], ["x", "x"]],
        "grading": {"q_degrees": [0, 0], "r_degrees": [1, 1, 1, 1], "s_degrees": [2, 2]},
    },
    "diag": {
        "ring": RING4,
        "phi": [["x", "0", "z", "0"], ["0", "y", "0", "w"]],
        "psi": [["-z", "0"], ["0", "-w"], ["x", "0"], ["0", "y"]],
    },
    "paired": {
        "ring": RING4,
        "phi": [["x", "0", "z", "x"], ["0", "y", "y", "w"]],
        "psi": [["-z", "-y"], ["-x", "-w"], ["x", "0"], ["0", "y"]],
    },
    # alpha = diag(x, y), beta = diag(y, x): det alpha and det beta share x and y
    "swapped": {
        "ring": RING4,
        "phi": [["x", "0", "y", "0"], ["0", "y", "0", "x"]],
        "psi": [["-y", "0"], ["0", "-x"], ["x", "0"], ["0", "y"]],
    },
    "lemma": {
        "ring": RING4,
        "phi": [["x", "0", "0", "z"], ["y", "0", "w", "0"]],
    },
}


def names():
    return list(_FIXTURES)


def get(name):
    return copy.deepcopy(_FIXTURES[name])


def resolution_fixtures():
    """Fixtures that carry a full complex (phi and psi)."""
    return [k for k, v in _FIXTURES.items() if "psi" in v]
