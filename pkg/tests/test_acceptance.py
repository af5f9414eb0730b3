"""Exit criteria of the build, one test per criterion.

Each test is tagged ``acceptance(n)``; the terminal summary prints one
PASS/FAIL line per criterion.  Run alone with ``pytest tests/test_acceptance.py``.
"""
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from gridfunc import bench
from gridfunc.analytic import Arccos, Cos, Polynomial, Scaled, compose, fixtures
from gridfunc.concepts import check_differentiable_function, check_function
from gridfunc.erasure import erase, footprint, track_allocations
from gridfunc.errors import ConceptError
from gridfunc.grid import make_uniform_grid
from gridfunc.gridfn import derivative_gvf, derivative_local, eval_local, lift, local_function, p1_interpolate
from gridfunc.interface import Signature, Vector

from .test_gridfn import CountingVector

XHATS = np.linspace(0.0, 1.0, 10).tolist()


def central_difference(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


@pytest.mark.acceptance(1)
def test_midpoint_exactness():
    start = time.perf_counter()
    for backend in bench.available_backends():
        for N in (1, 3, 16):
            expected = np.arange(1, N + 1) - 0.5
            for n in (1, 10, 1000):
                for v in bench.VARIANTS:
                    r, _ = bench.run_variant(v, N, n, backend)
                    assert np.max(np.abs(r - expected)) <= 1e-10, (backend, v, N, n)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2)
def test_cross_variant_bitwise_equality():
    start = time.perf_counter()
    for N in range(1, 17):
        results = [bench.run_variant(v, N, 1000)[0].tobytes() for v in bench.VARIANTS]
        assert len(set(results)) == 1, N
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(3)
@pytest.mark.timing
def test_timing_relative_claims():
    start = time.perf_counter()
    cfg = bench.BenchConfig(components_range=(1, 8, 16), total_work=1_000_000, repeats=4, warmup_runs=1)
    records = bench.run_benchmark(cfg)
    t = {(r.variant, r.N): r.min_time_ms for r in records}
    for N in (1, 8, 16):
        a, b, c, d = (t[v, N] for v in "abcd")
        print(f"N={N:2d} a={a:.3f} b={b:.3f} c={c:.3f} d={d:.3f} ms  b/a={b / a:.2f} c/a={c / a:.2f} d/a={d / a:.2f}")
        assert abs(a - b) <= 0.25 * min(a, b), ("a vs b", N, a, b)
        assert c >= 0.9 * a, ("c vs a", N, a, c)
        assert d >= 0.9 * a, ("d vs a", N, a, d)
    assert time.perf_counter() - start < 30.0


@pytest.mark.acceptance(4)
def test_small_object_optimization():
    small = (1.0,) * 7  # 56 bytes by value
    large = (1.0,) * 16  # 128 bytes by value

    def capture(state):
        return lambda x: x + state[0]

    f_small, f_large = capture(small), capture(large)
    assert footprint(f_small) == 56 and footprint(f_large) == 128

    with track_allocations() as s:
        h = erase(f_small)
    assert h.is_inline and s.allocations == 0
    with track_allocations() as s:
        h(0.5)
    assert s.allocations == 0

    with track_allocations() as s:
        g = erase(f_large)
    assert not g.is_inline and s.allocations == 1
    with track_allocations() as s:
        g(0.5)
    assert s.allocations == 0


@pytest.mark.acceptance(5)
def test_derivative_correctness():
    p = Polynomial([1, 2, 3])
    dp = p.derivative()
    assert dp == Polynomial([2, 6])
    for x in (-1.0, 0.0, 0.5, 2.0):
        assert math.isclose(dp(x), central_difference(p, x), rel_tol=1e-6)
        assert dp.derivative()(x) == 6.0
    t2 = compose(Cos(), Scaled(2.0, Arccos()))
    dt2 = t2.derivative()
    for x in (-0.5, 0.0, 0.5):
        fd = central_difference(t2, x)
        assert abs(dt2(x) - fd) <= 1e-6 * max(1.0, abs(fd))
        assert math.isclose(dt2(x), 4 * x, abs_tol=1e-12)


@pytest.mark.acceptance(6)
def test_derivative_convention():
    cases = [
        lift(lambda x: x * x, lambda x: 2 * x, make_uniform_grid(8)),
        p1_interpolate(make_uniform_grid(2), [0.0, 1.0, 0.0]),
    ]
    for f in cases:
        fe = local_function(f)
        dfe = local_function(derivative_gvf(f))
        for e in f.grid_view.elements():
            fe.bind(e)
            dfe.bind(e)
            d2 = derivative_local(fe)
            for xhat in XHATS:
                assert eval_local(d2, xhat) == eval_local(dfe, xhat)
    sq = cases[0]
    fe = local_function(sq)
    fe.bind(sq.grid_view.element(0))
    assert derivative_local(fe)(0.5) == 2 * (0.5 / 8)
    fe2 = local_function(lift(lambda x: x * x, lambda x: 2 * x, make_uniform_grid(2)))
    fe2.bind(fe2.grid_view.element(0))
    assert derivative_local(fe2)(0.5) == 0.5


@pytest.mark.acceptance(7)
def test_prefetch_isolation():
    values = CountingVector([0.0, 1.0, 0.0, 2.0])
    f = p1_interpolate(make_uniform_grid(3), values)
    lf = local_function(f)
    for e in f.grid_view.elements():
        before = values.reads
        lf.bind(e)
        assert values.reads > before
        after_bind = values.reads
        for xhat in XHATS:
            eval_local(lf, xhat)
        assert values.reads == after_bind


@pytest.mark.acceptance(8)
def test_concept_diagnostics():
    report = check_function(1)
    assert not report.models
    assert "function concept" in report.diagnostic
    for name, f in fixtures().items():
        assert check_function(f).models, name
    for f in (Polynomial([1, 2, 3]), Polynomial([]), compose(Cos(), Scaled(3.0, Arccos()))):
        assert check_differentiable_function(f).models


@pytest.mark.acceptance(9)
def test_erasure_transparency():
    rng = np.random.default_rng(20240601)
    xs = rng.uniform(-3.0, 3.0, 100).tolist()
    targets = dict(fixtures(), polynomial=Polynomial([1, 2, 3]))
    for name, f in targets.items():
        h = erase(f)
        for x in xs:
            assert h(x) == f(x), name
    assert erase(lambda x: math.floor(x))(2.7) == 2.0
    with pytest.raises(ConceptError, match="range not convertible"):
        erase(lambda x: (x, x))
    with pytest.raises(ConceptError):
        erase(lambda x: complex(x, x))


@pytest.mark.acceptance(10)
def test_cli_contract(tmp_path):
    start = time.perf_counter()
    ok = subprocess.run(
        [sys.executable, "-m", "gridfunc", "bench", "--components", "1-4", "--work", "100000", "--csv", "out.csv"],
        cwd=tmp_path, capture_output=True, text=True,
    )
    assert ok.returncode == 0, ok.stderr
    lines = (tmp_path / "out.csv").read_text().splitlines()
    assert len(lines) == 17 and lines[0] == "variant,N,n_calls,min_time_ms"
    bad = subprocess.run(
        [sys.executable, "-m", "gridfunc", "bench", "--components", "0"], cwd=tmp_path, capture_output=True, text=True
    )
    assert bad.returncode == 2
    assert time.perf_counter() - start < 5.0
