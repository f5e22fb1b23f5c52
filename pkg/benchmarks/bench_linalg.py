"""Compare the compiled row-reduction kernel against the pure fallback.

Three views, all with the transparent overflow fallback left in place:

* raw integer echelon on small-entry matrices (the shape the library
  actually feeds the kernel: structure-constant rows), with the bail rate
  so oversize inputs are visibly handed to the big-integer path;
* the rational rank/nullspace/det mix, rerun in a KOSZUL_PURE=1
  subprocess so module-level backend selection is exercised end to end;
* one application mix (fundamental-equation solve plus two cohomology
  tables) timed the same two ways.

Usage: python benchmarks/bench_linalg.py [--repeats 5]
"""

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time
from fractions import Fraction

from koszul import linalg
from koszul._kernel import echelon, kernel_backend
from koszul._kernel.bareiss_py import OverflowBail, echelon_py

KERNEL_SIZES = (6, 8, 10, 12, 16)
RATIONAL_SIZES = (6, 10, 14)


def int_rows(n, rng):
    return [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]


def frac_mat(n, rng):
    return [[Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))
             for _ in range(n)] for _ in range(n)]


def timed(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples) * 1000.0


def bail_rate(mats):
    try:
        from koszul._kernel import _bareiss_cy
    except ImportError:
        return None
    bails = 0
    for m in mats:
        try:
            _bareiss_cy.echelon_i64([r[:] for r in m])
        except OverflowBail:
            bails += 1
    return bails / len(mats)


def bench_kernel(repeats, rng):
    rows = []
    for n in KERNEL_SIZES:
        mats = [int_rows(n, rng) for _ in range(20)]

        def run(fn):
            def inner():
                for m in mats:
                    fn([r[:] for r in m])
            return inner

        py_ms = timed(run(echelon_py), repeats)
        cy_ms = timed(run(echelon), repeats) \
            if kernel_backend() == "cython" else None
        rows.append((n, cy_ms, py_ms, bail_rate(mats)))
    return rows


def bench_rational(repeats, rng):
    out = []
    for n in RATIONAL_SIZES:
        mats = [frac_mat(n, rng) for _ in range(6)]

        def run():
            for m in mats:
                linalg.rank(m)
                linalg.nullspace(m, ncols=n)
                linalg.det(m)

        out.append((n, timed(run, repeats)))
    return out


def bench_application(repeats):
    from koszul.algebra import abelian
    from koszul.catalog import heisenberg_kv, so3
    from koszul.cohomology import ADJOINT, ce_cohomology_dims, \
        kv_cohomology_dims
    from koszul.connections import cartan_connection
    from koszul.gauge import solve_fe_star

    def run():
        solve_fe_star(cartan_connection(abelian(4), "zero"))
        ce_cohomology_dims(so3(), ADJOINT)
        kv_cohomology_dims(heisenberg_kv(), ADJOINT)

    return timed(run, repeats)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--emit-json", action="store_true",
                    help="machine-readable timings (subprocess mode)")
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)

    if args.emit_json:
        print(json.dumps({"backend": kernel_backend(),
                          "rational": bench_rational(args.repeats, rng),
                          "application": bench_application(args.repeats)}))
        return 0

    print(f"active backend: {kernel_backend()}")
    print("\ninteger echelon, entries in [-3, 3] (20 matrices per call)")
    print(f"{'size':>5} {'compiled':>10} {'pure':>10} {'speedup':>9} "
          f"{'bail':>6}")
    for n, cy, py, bail in bench_kernel(args.repeats, rng):
        cy_s = f"{cy:10.2f}" if cy is not None else "  <absent>"
        ratio = f"{py / cy:8.1f}x" if cy else "        -"
        bail_s = f"{bail:6.0%}" if bail is not None else "     -"
        print(f"{n:>5} {cy_s} {py:10.2f} {ratio} {bail_s}")

    here_rat = bench_rational(args.repeats, rng)
    here_app = bench_application(args.repeats)
    env = dict(os.environ, KOSZUL_PURE="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--emit-json",
         "--repeats", str(args.repeats), "--seed", str(args.seed)],
        capture_output=True, text=True, env=env, check=True)
    pure = json.loads(child.stdout.strip().splitlines()[-1])
    assert pure["backend"] == "python", pure["backend"]

    print("\nrational rank+nullspace+det, entries n/d with |n|<=3, d<=3")
    print(f"{'size':>5} {'active':>10} {'pure':>10} {'speedup':>9}")
    for (n, ms), (n2, ms2) in zip(here_rat, pure["rational"]):
        assert n == n2
        print(f"{n:>5} {ms:10.2f} {ms2:10.2f} {ms2 / ms:8.1f}x")

    print("\napplication mix (fe-star solve + two cohomology tables)")
    print(f"{'active':>10} {'pure':>10} {'speedup':>9}")
    print(f"{here_app:10.2f} {pure['application']:10.2f} "
          f"{pure['application'] / here_app:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
