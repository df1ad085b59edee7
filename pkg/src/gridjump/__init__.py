"""Solvers and experiment drivers for 2D elliptic problems whose
piecewise-constant coefficient jumps across a lattice of crossing
vertical and horizontal interface lines.

Two discretizations of the same problem are provided: tensor-product
linear finite elements (``fem``) and an upwind flux-matching finite
difference scheme (``fdm``), together with self-convergence analysis,
brute-force references for testing, built-in experiment presets, and a
command-line runner.
"""

from .analysis import (
    ConvergenceRow,
    ScalarField,
    cross_difference,
    observed_order,
    restrict,
    self_error,
)
from .coefficients import (
    CoefficientField,
    checkerboard,
    from_matrix,
    load_coefficient,
    save_coefficient,
    uniform,
)
from .experiments import compare_methods, run_table, solve_with_method
from .fdm import (
    FdmProblem,
    StencilRow,
    assemble_fdm,
    interface_h_row,
    interface_v_row,
    interior_row,
    one_sided_dx,
    solve_fdm,
)
from .fem import FemProblem, UNIT_CELL_STIFFNESS, assemble_fem, element_stiffness, solve_fem
from .grid import DofMap, GridSpec, PointClass, build_dof_map, classification_grid, classify
from .presets import PRESETS, ExperimentPreset, get_preset, parse_coeff_spec
from .reference import FourierConfig, dense_assembly, fourier_poisson, fourier_poisson_grid
from .solvers import (
    SolverConfig,
    SolverError,
    SparseSystem,
    factor_solve,
    matvec,
    save_matrix_market,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceRow",
    "ScalarField",
    "cross_difference",
    "observed_order",
    "restrict",
    "self_error",
    "CoefficientField",
    "checkerboard",
    "from_matrix",
    "load_coefficient",
    "save_coefficient",
    "uniform",
    "compare_methods",
    "run_table",
    "solve_with_method",
    "FdmProblem",
    "StencilRow",
    "assemble_fdm",
    "interface_h_row",
    "interface_v_row",
    "interior_row",
    "one_sided_dx",
    "solve_fdm",
    "FemProblem",
    "UNIT_CELL_STIFFNESS",
    "assemble_fem",
    "element_stiffness",
    "solve_fem",
    "DofMap",
    "GridSpec",
    "PointClass",
    "build_dof_map",
    "classification_grid",
    "classify",
    "PRESETS",
    "ExperimentPreset",
    "get_preset",
    "parse_coeff_spec",
    "FourierConfig",
    "dense_assembly",
    "fourier_poisson",
    "fourier_poisson_grid",
    "SolverConfig",
    "SolverError",
    "SparseSystem",
    "factor_solve",
    "matvec",
    "save_matrix_market",
]
