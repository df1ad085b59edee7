"""Uniform Cartesian grids aligned with a lattice of interface lines.

The unit square is cut by ``m - 1`` vertical lines ``x = p/m`` and
``m - 1`` horizontal lines ``y = q/m``.  A grid with ``N`` intervals per
side (``N`` a multiple of ``m``) places nodes exactly on those lines, so
every node falls into one of five disjoint classes: domain boundary,
plain interior, on a vertical line only, on a horizontal line only, or
on a crossing of two lines.

Classification is done in integer arithmetic (``i * m mod N``), never by
comparing floats, so membership on an interface line is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class PointClass(IntEnum):
    """Disjoint node classes; every node has exactly one."""

    BOUNDARY = 0
    INTERIOR = 1
    INTERFACE_V = 2
    INTERFACE_H = 3
    INTERSECTION = 4


@dataclass(frozen=True)
class GridSpec:
    """Uniform N x N grid on the unit square, tied to an m x m cell lattice.

    ``N`` must be a multiple of ``m`` so interface lines coincide with
    grid lines, and ``N / m`` must be at least 2 so that five-point
    one-sided stencils and coefficient probes at ``x_i +- h`` stay inside
    a single coefficient cell.
    """

    N: int
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        if self.N % self.m != 0:
            raise ValueError(f"N must be a multiple of m, got N={self.N}, m={self.m}")
        if self.N // self.m < 2:
            raise ValueError(f"N/m must be >= 2, got N={self.N}, m={self.m}")

    @property
    def h(self) -> float:
        """Mesh size 1/N."""
        return 1.0 / self.N


def classify(grid: GridSpec, i: int, j: int) -> PointClass:
    """Classify node (i, j) against the boundary and the interface lattice.

    Nodes on the domain boundary are BOUNDARY regardless of interface
    membership.  Raises ValueError for indices outside ``0..N``.
    """
    N, m = grid.N, grid.m
    if not (0 <= i <= N and 0 <= j <= N):
        raise ValueError(f"node index ({i}, {j}) outside 0..{N}")
    if i == 0 or i == N or j == 0 or j == N:
        return PointClass.BOUNDARY
    on_v = (i * m) % N == 0
    on_h = (j * m) % N == 0
    if on_v and on_h:
        return PointClass.INTERSECTION
    if on_v:
        return PointClass.INTERFACE_V
    if on_h:
        return PointClass.INTERFACE_H
    return PointClass.INTERIOR


def classification_grid(grid: GridSpec) -> np.ndarray:
    """Classes of all nodes as an (N+1, N+1) integer array, indexed [i, j]."""
    N, m = grid.N, grid.m
    idx = np.arange(N + 1)
    on_line = (idx * m) % N == 0
    on_line[0] = on_line[N] = False
    edge = (idx == 0) | (idx == N)

    vmask = on_line[:, None] & np.ones(N + 1, dtype=bool)[None, :]
    hmask = np.ones(N + 1, dtype=bool)[:, None] & on_line[None, :]
    cls = np.full((N + 1, N + 1), int(PointClass.INTERIOR), dtype=np.int8)
    cls[vmask & ~hmask] = int(PointClass.INTERFACE_V)
    cls[~vmask & hmask] = int(PointClass.INTERFACE_H)
    cls[vmask & hmask] = int(PointClass.INTERSECTION)
    cls[edge[:, None] | edge[None, :]] = int(PointClass.BOUNDARY)
    return cls


class DofMap:
    """Bijection between unknown indices and the non-boundary grid nodes.

    Numbering is j-major: rows of constant j are scanned from j = 1
    upward with i ascending inside each row.  With
    ``exclude_intersections`` the nodes where two interface lines cross
    are left out of the unknown set (they carry no equation in the
    difference scheme).

    Attributes
    ----------
    node_to_dof : (N+1, N+1) int array, -1 at unmapped nodes.
    dof_to_node : (n, 2) int array of (i, j) pairs.
    """

    def __init__(self, grid: GridSpec, exclude_intersections: bool = False):
        self.grid = grid
        self.exclude_intersections = exclude_intersections
        cls = classification_grid(grid)
        mapped = cls != int(PointClass.BOUNDARY)
        if exclude_intersections:
            mapped &= cls != int(PointClass.INTERSECTION)

        # scan j-major: transpose so the fast axis is i
        flat = mapped.T.ravel()
        order = np.cumsum(flat) - 1
        node_to_dof_t = np.where(flat, order, -1).reshape(mapped.T.shape)
        self.node_to_dof = np.ascontiguousarray(node_to_dof_t.T)
        jj, ii = np.nonzero(mapped.T)
        self.dof_to_node = np.column_stack([ii, jj]).astype(np.int64)
        self.n = int(flat.sum())

    def __len__(self) -> int:
        return self.n

    def dof(self, i: int, j: int) -> int:
        """Unknown index of node (i, j), or -1 if the node is not mapped."""
        return int(self.node_to_dof[i, j])

    def node(self, k: int) -> tuple[int, int]:
        """Node (i, j) owning unknown k."""
        i, j = self.dof_to_node[k]
        return int(i), int(j)


def build_dof_map(grid: GridSpec, exclude_intersections: bool = False) -> DofMap:
    """Number the unknowns of a discretization on ``grid``.

    Without exclusions there are (N-1)^2 unknowns (all interior nodes);
    excluding intersections removes (m-1)^2 of them.
    """
    return DofMap(grid, exclude_intersections)
