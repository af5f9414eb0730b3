"""Command line: ``gridfunc bench``, ``gridfunc demo`` and ``gridfunc check``.

Exit status is 0 on success, 1 on a runtime failure (I/O error, failed demo
or check) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import math
import sys

from . import bench
from .analytic import Polynomial, SinSquared, chebyshev, compose, fixtures, sin_squared
from .concepts import (
    check_differentiable_function,
    check_function,
    check_grid_view_function,
    check_local_function,
)
from .erasure import ErasedDifferentiableFunction, erase
from .grid import make_uniform_grid
from .gridfn import erase_grid_view_function, lift, p1_interpolate


def parse_components(text: str) -> tuple[int, ...]:
    """Parse ``"1-16"``, ``"1,2,8"`` or mixtures such as ``"1-4,8"``."""
    values = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = (int(p) for p in part.split("-", 1))
                if hi < lo:
                    raise ValueError
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid component list {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"component counts must be >= 1: {text!r}")
    return tuple(dict.fromkeys(values))


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _non_negative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def _variants(text: str) -> tuple[str, ...]:
    chosen = tuple(dict.fromkeys(text.lower()))
    if not chosen or any(v not in bench.VARIANTS for v in chosen):
        raise argparse.ArgumentTypeError(f"variants must be letters from 'abcd': {text!r}")
    return chosen


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridfunc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", metavar="{bench,demo,check}")
    sub.required = True

    b = sub.add_parser("bench", help="time the four call styles on the midpoint rule")
    b.add_argument("--components", type=parse_components, default=tuple(range(1, 17)),
                   help="vector sizes N, e.g. 1-16 or 1,2,8 (default 1-16)")
    b.add_argument("--work", type=_positive, default=10_000_000,
                   help="total work W; n = floor(W/N) subintervals (default 10000000)")
    b.add_argument("--repeats", type=_positive, default=4, help="measured runs (default 4)")
    b.add_argument("--warmup", type=_non_negative, default=1, help="unmeasured runs first (default 1)")
    b.add_argument("--variants", type=_variants, default=bench.VARIANTS, help="subset of abcd")
    b.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    b.add_argument("--csv", metavar="PATH", help="write results as CSV")
    b.add_argument("--chart", metavar="PATH", help="write an SVG chart")

    sub.add_parser("demo", help="walk through the function interfaces")
    sub.add_parser("check", help="print concept reports for the fixtures")
    return parser


def cmd_bench(args, parser) -> int:
    if args.backend == "compiled" and "compiled" not in bench.available_backends():
        parser.error("compiled backend not available")
    try:
        cfg = bench.BenchConfig(
            components_range=args.components,
            total_work=args.work,
            repeats=args.repeats,
            warmup_runs=args.warmup,
            variants=args.variants,
            backend=None if args.backend == "auto" else args.backend,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        records = bench.run_benchmark(cfg)
    except ValueError as exc:
        parser.error(str(exc))

    print(f"{'variant':>7} {'N':>4} {'n_calls':>10} {'min_ms':>12} {'backend':>9}")
    for r in sorted(records, key=lambda r: (r.variant, r.N)):
        print(f"{r.variant:>7} {r.N:>4} {r.n_calls:>10} {r.min_time_ms:>12.3f} {r.backend:>9}")
    agree = bench.checksums_agree(records)
    print(f"checksum total {sum(r.checksum for r in records):.6f}; variants agree: {'yes' if agree else 'NO'}")

    try:
        if args.csv:
            bench.emit_csv(records, args.csv)
        if args.chart:
            bench.emit_chart(records, args.chart)
    except OSError as exc:
        print(f"gridfunc: error: {exc}", file=sys.stderr)
        return 1
    return 0 if agree else 1


class _Walkthrough:
    def __init__(self):
        self.failures = 0

    def line(self, label: str, value, ok: bool) -> None:
        self.failures += not ok
        print(f"[{'pass' if ok else 'FAIL'}] {label}: {value}")


def cmd_demo() -> int:
    w = _Walkthrough()
    x = 0.5 * math.pi

    f = Polynomial([1, 2, 3])
    a = f(x)
    w.line("Polynomial{1,2,3}(pi/2)", f"{a:.6f}", math.isclose(a, 1 + math.pi + 0.75 * math.pi**2, rel_tol=1e-14))
    df = f.derivative()
    b = df(x)
    w.line("derivative(f)(pi/2)", f"{b:.6f}", math.isclose(b, 2 + 3 * math.pi, rel_tol=1e-14))

    handle = erase(sin_squared)
    values = []
    for g in fixtures().values():
        handle.assign(g)
        values.append(handle(x))
    w.line("erased handle reassigned across free function, closure, object", values,
           all(v == 1.0 for v in values))
    handle.assign(lambda t: math.floor(t))
    w.line("erased handle holding an int-valued closure at 2.7", handle(2.7), handle(2.7) == 2.0)

    poly = ErasedDifferentiableFunction(f)
    w.line("erased Polynomial and its derivative at pi/2", (poly(x), poly.derivative()(x)),
           poly(x) == a and poly.derivative()(x) == b)

    t2 = chebyshev(2)
    w.line("T2(0.5) = cos(2 arccos 0.5)", f"{t2(0.5):.12f}", math.isclose(t2(0.5), -0.5, abs_tol=1e-12))

    gv = make_uniform_grid(2)
    sq = lift(lambda s: s * s, lambda s: 2 * s, gv)
    lf = erase_grid_view_function(sq).local_function()
    lf.bind(gv.element(0))
    y0 = lf(0.5)
    lf.bind(gv.element(1))
    y1 = lf(0.5)
    w.line("erased local x^2 bound to element 0, then 1, at xhat=0.5", (y0, y1), (y0, y1) == (0.0625, 0.5625))

    lf.bind(gv.element(0))
    d1 = lf.derivative()(0.5)
    dgl = sq.derivative().local_function()
    dgl.bind(gv.element(0))
    d2 = dgl(0.5)
    w.line("local derivative in global coordinates (expect 0.5, not 0.25)", (d1, d2), d1 == d2 == 0.5)

    p1 = p1_interpolate(make_uniform_grid(2), [0.0, 1.0, 0.0])
    slopes = p1.derivative().element_values
    w.line("P1 {0,1,0} slopes per element", slopes, slopes == (2.0, -2.0))

    print(f"{'all demo checks passed' if w.failures == 0 else f'{w.failures} demo checks failed'}")
    return 0 if w.failures == 0 else 1


def cmd_check() -> int:
    gv = make_uniform_grid(4)
    square = lift(lambda s: s * s, lambda s: 2 * s, gv)
    cases = [
        ("sinSquared", check_function(sin_squared), True),
        ("sinSquaredClosure", check_function(fixtures()["sinSquaredClosure"]), True),
        ("sinSquaredObject", check_function(SinSquared()), True),
        ("integer 1", check_function(1), False),
        ("complex-valued closure", check_function(lambda t: complex(t, 0.0)), False),
        ("Polynomial{1,2,3}", check_differentiable_function(Polynomial([1, 2, 3])), True),
        ("zero Polynomial{}", check_differentiable_function(Polynomial([])), True),
        ("sin^2 closure", check_differentiable_function(fixtures()["sinSquaredClosure"]), False),
        ("chebyshev T3", check_differentiable_function(chebyshev(3)), True),
        ("compose(Polynomial, Polynomial)",
         check_differentiable_function(compose(Polynomial([0, 0, 1]), Polynomial([0, 1]))), True),
        ("lift(x^2)", check_grid_view_function(square), True),
        ("localFunction(lift(x^2))", check_local_function(square.local_function()), True),
        ("Polynomial{1}", check_grid_view_function(Polynomial([1])), False),
    ]
    mismatches = 0
    for name, report, expected in cases:
        ok = report.models == expected
        mismatches += not ok
        verdict = "yes" if report.models else f"no: {report.diagnostic}"
        print(f"[{'pass' if ok else 'FAIL'}] {name} vs {report.concept_name}: models: {verdict}")
    return 0 if mismatches == 0 else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "bench":
        return cmd_bench(args, parser)
    if args.verb == "demo":
        return cmd_demo()
    return cmd_check()


if __name__ == "__main__":
    sys.exit(main())
