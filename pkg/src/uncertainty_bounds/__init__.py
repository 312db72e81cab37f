"""Variance-based uncertainty bounds for pairs of Hermitian observables.

Computes the Heisenberg-Robertson product bound and the sum-of-variances
bounds of Maccone and Pati on finite-dimensional pure states, and checks how
they behave at eigenstates and at states where <[A,B]> vanishes.
"""

from .av import AVDecomposition, av_decompose, av_reconstruct_residual
from .bounds import (
    HRReport,
    MP1Report,
    MPSuiteReport,
    bound_suite,
    hr_bound,
    m12a_rhs,
    mp1_bound,
    mp1_optimal,
    mp2_bound,
    mp2_matrix_element,
)
from .linalg import hermitian_eigensystem, inner, is_hermitian, normalize, project_orthogonal
from .sampler import (
    SampleConfig,
    TightnessStats,
    eigenstate_approach_scan,
    gue_observable,
    haar_state,
    stream,
    tightness_scan,
)
from .scenarios import (
    ScenarioResult,
    counterexample_scenario,
    counterexample_search,
    eigenstate_scenario,
)
from .state import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Observable,
    StateVector,
    commutator,
    correlation,
    deviation_apply,
    expectation,
    identity,
    moments,
)

__version__ = "0.1.0"
