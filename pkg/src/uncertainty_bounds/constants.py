"""Shared numerical tolerances.

Every module reads its defaults from here so the thresholds stay in one place.
"""

#: relative threshold used by :func:`~uncertainty_bounds.linalg.is_hermitian`
HERMITIAN_TOL = 1e-10

#: unit-norm and orthogonality tolerance for state vectors
NORM_TOL = 1e-12

#: below this deviation a state counts as an eigenstate (no perpendicular direction)
EPS_EIGEN = 1e-8

#: absolute threshold for an imaginary residue in <phi|F|phi>, scaled by 1 + ||F||
EXPECTATION_IMAG_TOL = 1e-10

#: tolerance factor for identities that scale with 1 + ||A|| ||B||
IDENTITY_TOL = 1e-10

#: allowed negative slack of a valid bound, times the scale
SLACK_TOL = 1e-9

#: "commutator expectation vanishes" threshold, times the scale
COMMUTATOR_TOL = 1e-8

#: precondition threshold on ||[A, B]|| for scenarios that need a noncommuting pair
NONCOMMUTING_TOL = 1e-10

#: penalty weight on |<[A,B]>|^2 in the counterexample search
SEARCH_PENALTY = 1e3

#: default number of random starts in the counterexample search
SEARCH_STARTS = 32
