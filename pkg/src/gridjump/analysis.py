"""Nodal fields, self-convergence norms, and method comparison.

Because the problems here have no closed-form solutions, accuracy is
measured by self-convergence: a solution on mesh size h is compared with
its own refinement on h/2 sampled back onto the coarse nodes,

    e2   = h * sqrt( sum |u_h(i,j) - u_{h/2}(2i,2j)|^2 ),
    einf = max |u_h(i,j) - u_{h/2}(2i,2j)|,

with both sums running over the nodes where both fields carry a value
(the difference scheme defines no value at interface crossings).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ScalarField:
    """Nodal values on the (N+1) x (N+1) grid with a validity mask.

    ``values[i, j]`` lives at (x_i, y_j) = (i h, j h).  ``mask`` is False
    where the field carries no value; consumers must never read such a
    node.
    """

    values: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        msk = np.asarray(self.mask, dtype=bool)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError(f"values must be square, got shape {vals.shape}")
        if msk.shape != vals.shape:
            raise ValueError(f"mask shape {msk.shape} does not match values {vals.shape}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "mask", msk)

    @property
    def N(self) -> int:
        return self.values.shape[0] - 1


def restrict(fine: ScalarField) -> ScalarField:
    """Sample a field at every other node: coarse (i, j) <- fine (2i, 2j)."""
    if fine.N % 2 != 0:
        raise ValueError(f"cannot restrict a field with odd N={fine.N}")
    return ScalarField(fine.values[::2, ::2].copy(), fine.mask[::2, ::2].copy())


def self_error(u_h: ScalarField, u_h2: ScalarField) -> tuple[float, float]:
    """Self-convergence errors (e2, einf) of u_h against its refinement u_h2.

    ``u_h2`` must live on the doubled grid; nodes masked out in either
    field are skipped, which on matching interface geometry means
    exactly the interface crossings.
    """
    if u_h2.N != 2 * u_h.N:
        raise ValueError(f"refinement must double the grid: got N={u_h.N} and N={u_h2.N}")
    sampled = restrict(u_h2)
    joint = u_h.mask & sampled.mask
    diff = np.abs(u_h.values - sampled.values)[joint]
    if diff.size == 0:
        return 0.0, 0.0
    h = 1.0 / u_h.N
    return h * float(np.sqrt(np.sum(diff**2))), float(diff.max())


def observed_order(e_h: float, e_h2: float) -> float:
    """log2 of the error drop between two successive refinements."""
    if e_h <= 0.0 or e_h2 <= 0.0:
        raise ValueError(f"errors must be positive, got {e_h} and {e_h2}")
    return math.log2(e_h / e_h2)


def cross_difference(u_first: ScalarField, u_second: ScalarField) -> tuple[ScalarField, float]:
    """Pointwise |difference| of two same-grid fields and its relative size.

    Returns the absolute-difference field (masked where either input is)
    and ``rel_inf`` = max |difference| / max |u_first|, the scale-free
    number used to call two solutions similar or divergent.
    """
    if u_first.N != u_second.N:
        raise ValueError(f"grids differ: N={u_first.N} vs N={u_second.N}")
    joint = u_first.mask & u_second.mask
    diff = np.zeros_like(u_first.values)
    diff[joint] = np.abs(u_first.values - u_second.values)[joint]
    peak = float(np.abs(u_first.values[u_first.mask]).max()) if u_first.mask.any() else 0.0
    top = float(diff[joint].max()) if joint.any() else 0.0
    if top == 0.0:
        rel = 0.0
    elif peak == 0.0:
        rel = math.inf
    else:
        rel = top / peak
    return ScalarField(diff, joint), rel


@dataclass(frozen=True)
class ConvergenceRow:
    """One refinement level of a self-convergence table.

    Orders are None on the coarsest row, where no previous error exists.
    """

    h: float
    e2: float
    order2: float | None
    einf: float
    orderinf: float | None
