"""Compare the compiled and pure-python FDTD kernels.

Usage: python benchmarks/bench_backends.py [--cells N] [--steps N]

Same entry point as `diasil bench`; kept as a standalone script so the
comparison can run against a source checkout.
"""

import argparse

from diasil.benchmark import run_benchmark
from diasil.fdtd import available_backends


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cells", type=int, default=80,
                    help="cells per side of the cubic benchmark domain")
    ap.add_argument("--steps", type=int, default=60)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}; domain {args.cells}^3 cells, "
          f"{args.steps} timed steps")
    table = run_benchmark(cells_per_side=args.cells, steps=args.steps,
                          backends=backends)
    ncells = args.cells**3
    for name, ms in table.items():
        print(f"  {name:7s}: {ms:8.2f} ms/step "
              f"({ms * 1e6 / ncells:6.1f} ns/cell-step)")
    if "python" in table and "cython" in table:
        print(f"  speedup: {table['python'] / table['cython']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
