"""Brute-force references the fast paths are tested against.

Everything in this module is deliberately independent of the assembly
and solver code: the dense assembly integrates gradients of explicitly
evaluated hat functions with Gauss quadrature (it never touches the
closed-form element matrix), and the series solution evaluates the
classical separation-of-variables formula for the unit-coefficient
problem -div(grad u) = 1 on the unit square,

    u(x, y) = sum over odd p, q of
              16 sin(p pi x) sin(q pi y) / (pi^4 p q (p^2 + q^2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fem import FemProblem


@dataclass(frozen=True)
class FourierConfig:
    """Odd-mode cutoff of the truncated series (p, q = 1, 3, ..., modes)."""

    modes: int = 2001

    def __post_init__(self):
        if self.modes < 3 or self.modes % 2 == 0:
            raise ValueError(f"modes must be an odd integer >= 3, got {self.modes}")


@lru_cache(maxsize=4)
def _series_terms(modes: int):
    p = np.arange(1, modes + 1, 2, dtype=float)
    psq = p * p
    coeff = 16.0 / (np.pi**4 * np.outer(p, p) * (psq[:, None] + psq[None, :]))
    p.setflags(write=False)
    coeff.setflags(write=False)
    return p, coeff


def fourier_poisson(x: float, y: float, config: FourierConfig | None = None) -> float:
    """Truncated series value at one point of the closed unit square."""
    cfg = config or FourierConfig()
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise ValueError(f"point ({x}, {y}) outside the closed unit square")
    p, coeff = _series_terms(cfg.modes)
    sx = np.sin(np.pi * x * p)
    sy = np.sin(np.pi * y * p)
    return float(sx @ coeff @ sy)


def fourier_poisson_grid(N: int, config: FourierConfig | None = None) -> np.ndarray:
    """Series values at all nodes of an N x N grid, indexed [i, j]."""
    cfg = config or FourierConfig()
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    p, coeff = _series_terms(cfg.modes)
    t = np.arange(N + 1) / N
    s = np.sin(np.pi * np.outer(t, p))
    return s @ coeff @ s.T


def _hat(t: float, k: int, h: float) -> float:
    v = 1.0 - abs(t - k * h) / h
    return v if v > 0.0 else 0.0


def _hat_deriv(t: float, k: int, h: float) -> float:
    d = t - k * h
    if abs(d) >= h or d == 0.0:
        return 0.0
    return -1.0 / h if d > 0.0 else 1.0 / h


def dense_assembly(problem: FemProblem, quad_order: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Variational matrix and load by direct quadrature, as dense arrays.

    Every integral is evaluated numerically: per cell, a tensor Gauss
    rule of ``quad_order`` points per axis samples the coefficient, the
    source, and the hat-function products.  Unknowns are the interior
    nodes in the same j-major order the fast path uses, so the arrays
    are directly comparable.  Dense storage caps N at 32.
    """
    grid = problem.grid
    N, h = grid.N, grid.h
    if N > 32:
        raise ValueError(f"dense assembly is for small grids only (N <= 32), got N={N}")
    if quad_order < 3:
        raise ValueError(f"quad_order must be >= 3, got {quad_order}")

    gauss_t, gauss_w = np.polynomial.legendre.leggauss(quad_order)
    n = (N - 1) ** 2
    matrix = np.zeros((n, n))
    load = np.zeros(n)

    def dof(i, j):
        if 0 < i < N and 0 < j < N:
            return (j - 1) * (N - 1) + (i - 1)
        return -1

    for ci in range(N):
        for cj in range(N):
            corners = ((ci, cj), (ci + 1, cj), (ci + 1, cj + 1), (ci, cj + 1))
            dofs = [dof(i, j) for i, j in corners]
            for tx, wx in zip(gauss_t, gauss_w):
                x = (ci + 0.5 * (1.0 + tx)) * h
                for ty, wy in zip(gauss_t, gauss_w):
                    y = (cj + 0.5 * (1.0 + ty)) * h
                    w = wx * wy * (h / 2.0) ** 2
                    a = problem.coeff.sample(x, y)
                    f_val = 1.0 if problem.f is None else float(problem.f(x, y))
                    phi = [_hat(x, i, h) * _hat(y, j, h) for i, j in corners]
                    gradx = [_hat_deriv(x, i, h) * _hat(y, j, h) for i, j in corners]
                    grady = [_hat(x, i, h) * _hat_deriv(y, j, h) for i, j in corners]
                    for p in range(4):
                        if dofs[p] < 0:
                            continue
                        load[dofs[p]] += w * f_val * phi[p]
                        for q in range(4):
                            if dofs[q] < 0:
                                continue
                            matrix[dofs[p], dofs[q]] += w * a * (
                                gradx[p] * gradx[q] + grady[p] * grady[q]
                            )
    return matrix, load
