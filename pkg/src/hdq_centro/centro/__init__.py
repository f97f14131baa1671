from .algebra import (
    DEFAULT_CLASSIFY_TOL,
    StructureClass,
    apply_reversal,
    classify,
    project,
    random_structured,
    reversal_matrix,
    structure_residuals,
    vector_symmetry,
)
from .blocks import (
    CentroBlocks,
    build_symmetry_basis,
    reduced_centro,
    reduced_skew,
    split_blocks,
    symmetric_basis_blocks,
)
from .dense import hqr_eigenvalues
from .eigen import (
    SKEW_SYMMETRIC,
    SYMMETRIC,
    UNLABELED,
    ClosureReport,
    Spectrum,
    closure_check,
    eig_centro,
    eig_dense,
    eig_skew,
    match_spectra,
)
