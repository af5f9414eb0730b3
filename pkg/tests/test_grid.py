import math

import pytest
from hypothesis import given, strategies as st

from gridfunc.errors import GridError
from gridfunc.grid import GridView, geometry_jacobian, global_from_local, locate, make_uniform_grid


def test_single_element():
    gv = make_uniform_grid(1)
    (e,) = gv.elements()
    assert (e.left, e.right, e.width) == (0.0, 1.0, 1.0)


def test_element_layout():
    e = make_uniform_grid(4).element(1)
    assert (e.left, e.width) == (0.25, 0.25)


def test_widths_sum_to_one():
    gv = make_uniform_grid(10)
    assert abs(math.fsum(e.width for e in gv.elements()) - 1.0) <= 1e-15


@pytest.mark.parametrize("M", [0, -3, 1.5])
def test_invalid_grid(M):
    with pytest.raises(GridError):
        make_uniform_grid(M)


def test_global_from_local():
    gv4 = make_uniform_grid(4)
    assert global_from_local(gv4.element(1), 0.5) == 0.375
    assert global_from_local(gv4.element(2), 0.0) == gv4.element(2).left
    assert global_from_local(make_uniform_grid(2).element(1), 1.0) == 1.0


@pytest.mark.parametrize("xhat", [-0.1, 1.5])
def test_local_out_of_range(xhat):
    with pytest.raises(GridError, match="local coordinate out of reference element"):
        global_from_local(make_uniform_grid(2).element(0), xhat)


@pytest.mark.parametrize("M, h", [(4, 0.25), (1, 1.0), (8, 0.125)])
def test_jacobian(M, h):
    assert geometry_jacobian(make_uniform_grid(M).element(0)) == h


@pytest.mark.parametrize(
    "x, index, local", [(0.25, 1, 0.0), (1.0, 3, 1.0), (0.375, 1, 0.5), (0.0, 0, 0.0)]
)
def test_locate(x, index, local):
    e, t = locate(make_uniform_grid(4), x)
    assert (e.index, t) == (index, local)


@pytest.mark.parametrize("x", [-1e-12, 1.0000001])
def test_locate_outside(x):
    with pytest.raises(GridError, match="point outside grid"):
        locate(make_uniform_grid(4), x)


def test_interior_vertices_go_right():
    for M in range(1, 40):
        gv = make_uniform_grid(M)
        for k in range(1, M):
            e, t = locate(gv, k / M)
            assert (e.index, t) == (k, 0.0)


@given(st.integers(1, 50), st.data(), st.floats(0, 1))
def test_round_trip(M, data, xhat):
    gv = make_uniform_grid(M)
    e = gv.element(data.draw(st.integers(0, M - 1)))
    found, t = locate(gv, global_from_local(e, xhat))
    if found.index == e.index:
        assert abs(t - xhat) <= 1e-12
    else:
        # right boundary tie-break
        assert found.index == e.index + 1 and t <= 1e-12 and abs(xhat - 1) <= 1e-12


@given(st.integers(1, 50), st.floats(0, 1), st.floats(0, 1))
def test_affine(M, a, b):
    e = make_uniform_grid(M).element(M // 2)
    mid = global_from_local(e, (a + b) / 2)
    assert mid == pytest.approx((global_from_local(e, a) + global_from_local(e, b)) / 2, abs=1e-15)


def test_foreign_element_detection():
    e = make_uniform_grid(3).element(2)
    assert make_uniform_grid(3).contains(e)
    assert not make_uniform_grid(4).contains(e)
    assert GridView(3) == make_uniform_grid(3)
