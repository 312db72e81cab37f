"""
A state where the commutator term vanishes
==========================================

For sigma_x and sigma_y on the equator of the Bloch sphere the expected
commutator is zero, so the product bound is trivial. The real part of the
correlation still gives a tight lower bound on the sum of variances.
"""

import numpy as np

from uncertainty_bounds import (
    PAULI_X,
    PAULI_Y,
    bound_suite,
    counterexample_scenario,
    counterexample_search,
)

# sweep the equator: m12a follows |sin 2 theta|, hr stays at zero
for theta in np.linspace(0, np.pi, 9):
    phi = np.array([1, np.exp(1j * theta)]) / np.sqrt(2)
    r = bound_suite(PAULI_X, PAULI_Y, phi)
    print(f"theta={theta:5.3f}  hr={r.hr.rhs:.2e}  m12a={r.m12a:.6f}  lhs={r.lhs_sum:.6f}")

phi = np.array([1, np.exp(1j * np.pi / 4)]) / np.sqrt(2)
print()
print(counterexample_scenario(PAULI_X, PAULI_Y, phi).render())

# the same kind of state found by search from random starts
found = counterexample_search(PAULI_X, PAULI_Y, seed=0)
print()
print("search result m12a:", bound_suite(PAULI_X, PAULI_Y, found).m12a)
