"""Uniform 1-D grid on [0, 1] with affine element geometry."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import GridError

__all__ = ["GridView", "Element", "make_uniform_grid", "global_from_local", "geometry_jacobian", "locate"]


@dataclass(frozen=True)
class GridView:
    """Partition of [0, 1] into ``num_elements`` equal elements ``[k/M, (k+1)/M]``."""

    num_elements: int

    def __post_init__(self):
        M = self.num_elements
        if isinstance(M, bool) or not isinstance(M, int) or M < 1:
            raise GridError(f"number of elements must be a positive integer, got {M!r}")

    def element(self, index: int) -> Element:
        if not 0 <= index < self.num_elements:
            raise GridError(f"element index {index} out of range [0, {self.num_elements})")
        return Element(index, index / self.num_elements, 1.0 / self.num_elements, self)

    def elements(self) -> Iterator[Element]:
        return (self.element(k) for k in range(self.num_elements))

    def __len__(self):
        return self.num_elements

    def contains(self, e: Element) -> bool:
        return isinstance(e, Element) and e.grid == self and 0 <= e.index < self.num_elements

    @property
    def vertices(self) -> list[float]:
        return [k / self.num_elements for k in range(self.num_elements + 1)]


@dataclass(frozen=True)
class Element:
    index: int
    left: float
    width: float
    grid: GridView

    @property
    def right(self) -> float:
        return (self.index + 1) / self.grid.num_elements

    def geometry(self, xhat: float) -> float:
        return global_from_local(self, xhat)


def make_uniform_grid(M: int) -> GridView:
    return GridView(M)


def global_from_local(e: Element, xhat: float) -> float:
    """Map a reference coordinate in [0, 1] to the global coordinate in ``e``."""
    if not 0.0 <= xhat <= 1.0:
        raise GridError(f"local coordinate out of reference element: {xhat!r}")
    return e.left + e.width * xhat


def geometry_jacobian(e: Element) -> float:
    return e.width


def locate(gv: GridView, x: float) -> tuple[Element, float]:
    """Find the element containing ``x`` and the local coordinate of ``x`` in it.

    Elements are half-open ``[left, right)`` except the last, which is closed,
    so a point on an interior vertex belongs to the element on its right.
    """
    if not 0.0 <= x <= 1.0:
        raise GridError(f"point outside grid: {x!r}")
    M = gv.num_elements
    k = min(int(math.floor(x * M)), M - 1)
    # x*M can round across a vertex; compare against the exact vertex values.
    if k + 1 < M and x >= (k + 1) / M:
        k += 1
    elif k > 0 and x < k / M:
        k -= 1
    e = gv.element(k)
    local = min(max((x - e.left) / e.width, 0.0), 1.0)
    return e, local
