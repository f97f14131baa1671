"""Harmonic differential quadrature operators on symmetric grids, structured
eigensolvers for centrosymmetric matrices, and Kirchhoff plate vibration."""

from .centro import (
    CentroBlocks,
    Spectrum,
    StructureClass,
    apply_reversal,
    build_symmetry_basis,
    classify,
    closure_check,
    eig_centro,
    eig_dense,
    eig_skew,
    reduced_centro,
    reduced_skew,
    split_blocks,
    vector_symmetry,
)
from .errors import (
    ConvergenceError,
    InvalidArgument,
    NumericalInstability,
    ReferenceMissing,
    SingularSystem,
    StructureError,
)
from .grid import Grid, chebyshev_grid, delta_grid, is_symmetric, uniform_grid
from .hdq import (
    DerivativeOperator,
    assemble_collocation,
    assemble_derivative_rhs,
    basis_derivative,
    basis_value,
    weights,
)
from .plate import (
    PlateOperator,
    PlateSpec,
    assemble_plate,
    modified_operators,
    reference_report,
    solve_plate,
    two_axis_blocks,
)

__version__ = "0.1.0"
