"""Inertia diagnostics for symmetric matrix splittings and preconditioners.

A stationary iteration ``M x_{k+1} = (M - A) x_k + b`` for symmetric A and
M can only be contractive when A and M have the same inertia. This package
computes inertias, the spectrum of ``M^{-1} A``, the eigenvalue curves of
``(1 - theta) A + theta M`` and ``(1 - theta) A - theta M``, and checks
the counting results that tie them together.
"""

from .densekernel import (
    GeneralSpectrum,
    Inertia,
    LdltFactorization,
    SymEigenDecomposition,
    charpoly_eigen_oracle,
    general_eigen,
    ldlt_inertia,
    solve_linear,
    spd_sqrt,
    sym_eigen,
)
from .errors import (
    ConvergenceError,
    GeneratorError,
    NotPositiveDefiniteError,
    NumericalError,
    ParameterError,
    SingularMatrixError,
)
from .generators import (
    SaddlePointSystem,
    block_diag_preconditioner,
    constraint_preconditioner,
    paper_example,
    random_sym_with_inertia,
    saddle_point,
)
from .homotopy import CountReport, Crossing, HomotopyTrajectory, count_report, crossing_eigenvalue, trace
from .pencil import (
    PencilClassification,
    chebyshev_value,
    pencil_spectrum,
    spd_similarity_check,
    verify_lemma,
)
from .splitting import IterationTrace, SplittingReport, contractivity_report, stationary_iterate

__version__ = "0.1.0"
