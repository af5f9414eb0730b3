"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/compare_backends.py [--work W] [--components 1,4,16]

Prints min-of-repeats milliseconds per (variant, N) for both backends, the
speedup, and whether the two backends agree bitwise.
"""
import argparse
import sys

from gridfunc import bench
from gridfunc.cli import parse_components


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--work", type=int, default=200_000)
    parser.add_argument("--components", type=parse_components, default=(1, 4, 16))
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args(argv)

    if "compiled" not in bench.available_backends():
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'variant':>7} {'N':>4} {'compiled_ms':>12} {'python_ms':>12} {'speedup':>9} {'bitwise':>8}")
    all_equal = True
    for N in args.components:
        n = args.work // N
        for v in bench.VARIANTS:
            best = {}
            out = {}
            for backend in ("compiled", "python"):
                bench.run_variant(v, N, n, backend)
                times = []
                for _ in range(args.repeats):
                    out[backend], ms = bench.run_variant(v, N, n, backend)
                    times.append(ms)
                best[backend] = min(times)
            equal = out["compiled"].tobytes() == out["python"].tobytes()
            all_equal &= equal
            speedup = best["python"] / best["compiled"] if best["compiled"] > 0 else float("inf")
            print(f"{v:>7} {N:>4} {best['compiled']:>12.3f} {best['python']:>12.3f} {speedup:>8.0f}x {str(equal):>8}")
    return 0 if all_equal else 1


if __name__ == "__main__":
    sys.exit(main())
