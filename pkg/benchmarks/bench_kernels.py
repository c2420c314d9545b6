"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both backends in-process.  The end-to-end timing runs a
D6 localization sweep in a subprocess per backend (FIBSCHUBERT_PURE=1 forces
the fallback at import).
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from fibschubert import _purekernels as pure
from fibschubert import kernels

try:
    from fibschubert import _ckernels as compiled
except ImportError:
    compiled = None


def random_poly(rng: random.Random, nvars: int, nterms: int, deg: int) -> dict[int, int]:
    out = {}
    while len(out) < nterms:
        exps = [0] * nvars
        for _ in range(deg):
            exps[rng.randrange(nvars)] += 1
        key = sum(e << (8 * i) for i, e in enumerate(exps))
        out[key] = rng.randint(-50, 50) or 1
    return out


def random_matrix(rng: random.Random, m: int, n: int) -> list[list[int]]:
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]


END_TO_END = {
    "D6 certify sweep (s)": (
        "from fibschubert.rootdata import catalog\n"
        "from fibschubert.integrality import certify\n"
        "S = catalog('D', 6)\n"
        "for r in range(1, 7):\n"
        "    for g in ('z0', 'z1'):\n"
        "        certify(S, r, g, 1)\n"
    ),
    "E7 P6 invariants mod I+ (s)": (
        "from fibschubert.rootdata import catalog\n"
        "from fibschubert.integrality import ParabolicChoice, invariant_basis_mod_Iplus\n"
        "S = catalog('E7')\n"
        "invariant_basis_mod_Iplus(S, ParabolicChoice(S, 6), 4)\n"
    ),
}


def end_to_end(script: str, pure_backend: bool) -> float:
    env = dict(os.environ, FIBSCHUBERT_PURE="1" if pure_backend else "0")
    code = f"import time\nt = time.perf_counter()\n{script}print(time.perf_counter() - t)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(res.stdout.strip())


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(7)
    a = random_poly(rng, 8, 400, 5)
    b = random_poly(rng, 8, 300, 5)
    M = random_matrix(rng, 40, 50)
    print(f"selected backend: {kernels.BACKEND}")
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    assert compiled is None or compiled.poly_mul(a, b) == pure.poly_mul(a, b)
    assert compiled is None or compiled.echelon(M, 50) == pure.echelon(M, 50)
    cases = [("poly_mul 400x300 terms", lambda m: m.poly_mul(a, b)), ("echelon 40x50", lambda m: m.echelon(M, 50))]
    print(f"{'kernel':28s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for name, fn in cases:
        tp = min(timeit.repeat(lambda: fn(pure), number=1, repeat=args.repeat)) * 1e3
        if compiled is not None:
            tc = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:28s} {tp:12.2f} {tc:12.2f} {tp / tc:8.1f}x")
        else:
            print(f"{name:28s} {tp:12.2f} {'-':>12s}")
    for name, script in END_TO_END.items():
        tp = end_to_end(script, True)
        tc = end_to_end(script, False)
        print(f"{name:28s} {tp:12.2f} {tc:12.2f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
