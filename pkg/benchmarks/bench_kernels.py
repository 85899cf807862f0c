"""Compare the numba kernels with the numpy fallback.

Times rank and determinant mod p on random square matrices, then the
degree-truncated exactness oracle on the cusp fixture, once per backend.

    python3 benchmarks/bench_kernels.py [--sizes 8 32 128] [--repeat 5]
"""

import argparse
import os
import time

import numpy as np

from szpiro import _kernels, fixtures
from szpiro.exactness import truncated_exactness
from szpiro.io import problem_from_dict

P = 2**31 - 1


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def with_backend(name, fn):
    old = os.environ.get("SZPIRO_NO_NUMBA")
    os.environ["SZPIRO_NO_NUMBA"] = "1" if name == "numpy" else "0"
    try:
        return fn()
    finally:
        if old is None:
            os.environ.pop("SZPIRO_NO_NUMBA", None)
        else:
            os.environ["SZPIRO_NO_NUMBA"] = old


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 128])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(args.seed)
    # warm the JIT so compile time is not counted
    with_backend("numba", lambda: _kernels.rank_mod_p(np.eye(2, dtype=np.int64), P))
    with_backend("numba", lambda: _kernels.det_mod_p(np.eye(2, dtype=np.int64), P))

    print(f"{'kernel':<10}{'size':>6}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        a = rng.integers(0, P, size=(n, n), dtype=np.int64)
        for label, fn in (("rank", _kernels.rank_mod_p), ("det", _kernels.det_mod_p)):
            results = {}
            for b in backends:
                results[b] = with_backend(b, lambda: best_of(lambda: fn(a, P), args.repeat))
            values = {v for _, v in results.values()}
            assert len(values) == 1, f"backends disagree on {label} {n}: {results}"
            cells = "".join(f"{results[b][0] * 1e3:>12.3f}ms" for b in backends)
            speed = results["numpy"][0] / results["numba"][0] if "numba" in results else float("nan")
            print(f"{label:<10}{n:>6}{cells}{speed:>9.1f}x")

    res = problem_from_dict(fixtures.get("E2")).resolution()
    results = {}
    for b in backends:
        results[b] = with_backend(b, lambda: best_of(lambda: truncated_exactness(res, D=6).exact, 1))
    cells = "".join(f"{results[b][0] * 1e3:>12.3f}ms" for b in backends)
    speed = results["numpy"][0] / results["numba"][0] if "numba" in results else float("nan")
    print(f"{'oracle E2':<10}{'D=6':>6}{cells}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
