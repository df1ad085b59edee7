"""Sparse linear-algebra layer shared by both discretizations.

CSR storage and the factorizations are delegated to scipy.sparse; this
module pins down the behaviour the discretizations rely on:

* optional row equilibration (each row and its right-hand side divided
  by the row's max-magnitude entry) to stabilize pivoting on badly
  row-scaled systems -- mathematically a no-op;
* an a-posteriori relative-residual check on every direct solve, with a
  few steps of iterative refinement before giving up;
* iterative fallbacks (CG with a diagonal preconditioner for SPD
  systems, BiCGSTAB with an incomplete LU otherwise) for
  experimentation; the tabulated results always use the direct path.

All paths are deterministic for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

if TYPE_CHECKING:
    from .grid import DofMap

_METHODS = ("direct", "cg", "bicgstab")


class SolverError(RuntimeError):
    """A linear solve failed; ``residual`` holds the best relative residual."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class SolverConfig:
    """How to solve the assembled systems.

    ``equilibrate`` applies row scaling before direct or BiCGSTAB solves;
    the CG path never equilibrates because it must keep the matrix
    symmetric.
    """

    method: str = "direct"
    rel_tol: float = 1e-12
    max_iter: int = 10_000
    equilibrate: bool = True

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass(frozen=True)
class SparseSystem:
    """Assembled linear system plus the node <-> unknown correspondence."""

    matrix: sp.csr_matrix
    rhs: np.ndarray
    dofmap: "DofMap" = field(repr=False)


def finalize_csr(matrix: sp.spmatrix) -> sp.csr_matrix:
    """Canonical CSR: duplicates summed, indices sorted, no stored zeros."""
    out = sp.csr_matrix(matrix)
    out.sum_duplicates()
    out.eliminate_zeros()
    out.sort_indices()
    return out


def matvec(A: sp.spmatrix, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product with an explicit dimension check."""
    x = np.asarray(x)
    if A.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {A.shape}, vector has {x.shape[0]}")
    return A @ x


def row_scale_factors(A: sp.csr_matrix) -> np.ndarray:
    """Per-row scale 1 / max|row|; raises on an empty (all-zero) row."""
    absmax = np.abs(A).max(axis=1).toarray().ravel()
    if np.any(absmax == 0.0):
        row = int(np.argmax(absmax == 0.0))
        raise SolverError(f"matrix is structurally singular: row {row} is empty")
    return 1.0 / absmax


def factor_solve(A: sp.spmatrix, b: np.ndarray, config: SolverConfig | None = None) -> np.ndarray:
    """Solve A x = b to the configured relative residual.

    The residual ||Ax - b|| / ||b|| is enforced on the system actually
    factored: with equilibration on, that is the row-scaled system,
    which is the only formulation for which the bound is meaningful once
    rows differ in scale by many orders of magnitude.  Raises
    SolverError when the factorization breaks down or the residual
    target cannot be met.
    """
    cfg = config or SolverConfig()
    A = sp.csr_matrix(A)
    b = np.asarray(b, dtype=float).ravel()
    n_rows, n_cols = A.shape
    if n_rows != n_cols:
        raise ValueError(f"matrix must be square, got {A.shape}")
    if b.shape[0] != n_rows:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix size {n_rows}")

    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros(n_rows)

    if cfg.method == "direct":
        return _solve_direct(A, b, b_norm, cfg)
    if cfg.method == "cg":
        return _solve_cg(A, b, b_norm, cfg)
    return _solve_bicgstab(A, b, b_norm, cfg)


def _scaled(A, b, cfg):
    if not cfg.equilibrate:
        return A, b, None
    scale = row_scale_factors(A)
    return sp.diags(scale) @ A, scale * b, scale


def _solve_direct(A, b, b_norm, cfg):
    del b_norm  # the residual is measured on the system actually factored
    As, bs, _ = _scaled(A, b, cfg)
    As_csr = sp.csr_matrix(As)
    bs_norm = float(np.linalg.norm(bs))
    try:
        lu = spla.splu(sp.csc_matrix(As))
    except RuntimeError as exc:  # SuperLU signals exact singularity this way
        raise SolverError(f"sparse factorization failed: {exc}") from exc
    x = lu.solve(bs)

    residual = float(np.linalg.norm(bs - As_csr @ x)) / bs_norm
    for _ in range(5):
        if residual <= cfg.rel_tol:
            break
        x = x + lu.solve(bs - As_csr @ x)
        residual = float(np.linalg.norm(bs - As_csr @ x)) / bs_norm
    if residual > cfg.rel_tol or not np.all(np.isfinite(x)):
        raise SolverError(
            f"direct solve residual {residual:.3e} exceeds rel_tol {cfg.rel_tol:.1e}",
            residual=residual,
        )
    return x


def _solve_cg(A, b, b_norm, cfg):
    diag = A.diagonal()
    if np.any(diag == 0.0):
        raise SolverError("cg: zero diagonal entry, diagonal preconditioner undefined")
    M = spla.LinearOperator(A.shape, matvec=lambda v: v / diag)
    x, info = spla.cg(A, b, rtol=cfg.rel_tol, atol=0.0, maxiter=cfg.max_iter, M=M)
    if info != 0:
        residual = float(np.linalg.norm(b - A @ x)) / b_norm
        raise SolverError(
            f"cg did not converge (info={info}), residual {residual:.3e}", residual=residual
        )
    return x


def _solve_bicgstab(A, b, b_norm, cfg):
    As, bs, _ = _scaled(A, b, cfg)
    try:
        ilu = spla.spilu(sp.csc_matrix(As), drop_tol=1e-5, fill_factor=10.0)
    except RuntimeError as exc:
        raise SolverError(f"incomplete factorization failed: {exc}") from exc
    M = spla.LinearOperator(As.shape, matvec=ilu.solve)
    x, info = spla.bicgstab(As, bs, rtol=cfg.rel_tol, atol=0.0, maxiter=cfg.max_iter, M=M)
    if info != 0:
        residual = float(np.linalg.norm(b - A @ x)) / b_norm
        raise SolverError(
            f"bicgstab did not converge (info={info}), residual {residual:.3e}",
            residual=residual,
        )
    return x


def save_matrix_market(A: sp.spmatrix, path) -> None:
    """Write a matrix in Matrix Market coordinate format.

    Indices are exact 1-based integers and values keep full double
    precision, so the file round-trips bit for bit.
    """
    coo = finalize_csr(A).tocoo()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        fh.write(f"{coo.shape[0]} {coo.shape[1]} {coo.nnz}\n")
        for i, j, v in zip(coo.row, coo.col, coo.data):
            fh.write(f"{i + 1} {j + 1} {v:.17E}\n")
