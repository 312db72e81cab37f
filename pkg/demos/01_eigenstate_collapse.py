"""
What the sum bounds say at an eigenstate of B
==============================================

At an eigenstate of B the product bound carries no information, and the
sum bounds reduce to statements about A alone.
"""

import numpy as np

from uncertainty_bounds import PAULI_X, PAULI_Z, bound_suite, eigenstate_scenario

# psi = (1, 0) is an eigenvector of sigma_z
psi = np.array([1.0, 0.0], dtype=complex)
r = bound_suite(PAULI_X, PAULI_Z, psi)

print("var A, var B     :", r.var_a, r.var_b)
print("product bound    :", r.hr.lhs_product, ">=", r.hr.rhs)
print("sum lhs          :", r.lhs_sum)
print("mp1 (best perp)  :", r.mp1_best, " equals var A")
print("mp2              :", r.mp2, " half the sum")
print("self-referential :", r.self_referential)

# the scenario bundles the same checks with tolerances and a verdict
print()
print(eigenstate_scenario(PAULI_X, PAULI_Z, 1).render())
