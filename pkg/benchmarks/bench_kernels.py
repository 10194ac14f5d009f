"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Two sections: the raw kernels on synthetic inputs, then a few end-to-end
workloads run in subprocesses with and without TOPTAUT_PURE=1.
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from toptaut import _kernels_py

try:
    from toptaut import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def _rows(seed: int, n: int, width: int):
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        cols = rng.sample(range(width), 12)
        rows.append({c: rng.randint(-50, 50) or 1 for c in cols})
    return rows


def _poly(seed: int, terms: int):
    rng = random.Random(seed)
    return {rng.getrandbits(40): Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 6)) for _ in range(terms)}


def kernel_cases():
    rows = _rows(1, 200, 400)
    pa, pb = _poly(2, 300), _poly(3, 300)
    rng = random.Random(4)
    pivots = set(range(0, 300, 2))
    basis = {c: {c: rng.randint(1, 9), **{300 + j: rng.randint(-9, 9) or 1 for j in rng.sample(range(100), 8)}} for c in pivots}
    return {
        "reduce_row": lambda k: [k.reduce_row(dict(r), basis, pivots) for r in rows],
        "combine": lambda k: [k.combine(rows[i], 3, rows[i + 1], -7) for i in range(199)],
        "primitive": lambda k: [k.primitive({c: 6 * v for c, v in r.items()}) for r in rows],
        "poly_mul": lambda k: k.poly_mul(pa, pb),
    }


WORKLOADS = {
    "hain_class(3,5)": "from toptaut import hain; hain.hain_class(3, 5)",
    "lemma53 d<=25": "from toptaut import lemmas; [lemmas.lemma53_check(d) for d in range(3, 26)]",
    "n2_certificate(2,8)": "from toptaut import socle; socle.n2_certificate(2, 8)",
}


def run_workload(code: str, pure: bool, repeat: int) -> float:
    env = dict(os.environ)
    env.pop("TOPTAUT_PURE", None)
    if pure:
        env["TOPTAUT_PURE"] = "1"
    script = (
        "import time\nt=time.perf_counter()\n" + code + "\nprint(time.perf_counter()-t)"
    )
    best = float("inf")
    for _ in range(repeat):
        out = subprocess.run([sys.executable, "-c", script], env=env, check=True, capture_output=True, text=True)
        best = min(best, float(out.stdout.strip().splitlines()[-1]))
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<24}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, fn in kernel_cases().items():
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=5, repeat=args.repeat))
        if _kernels_c is None:
            print(f"{name:<24}{tp:>12.4f}{'-':>14}{'-':>10}")
            continue
        tc = min(timeit.repeat(lambda: fn(_kernels_c), number=5, repeat=args.repeat))
        print(f"{name:<24}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.2f}x")
    print()
    print(f"{'workload':<24}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, code in WORKLOADS.items():
        tp = run_workload(code, True, args.repeat)
        tc = run_workload(code, False, args.repeat)
        print(f"{name:<24}{tp:>12.3f}{tc:>14.3f}{tp / tc:>9.2f}x")


if __name__ == "__main__":
    main()
