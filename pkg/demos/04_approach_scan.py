"""
Walking toward an eigenstate
============================

Interpolate from a random state to an eigenvector of B and watch the
product bound shrink to zero while mp2 settles at half the variance sum.
"""

from uncertainty_bounds import PAULI_X, PAULI_Z, eigenstate_approach_scan, stream

steps = eigenstate_approach_scan(PAULI_X, PAULI_Z, 1, 11, stream(42, 0))
print("   t    hr_rhs    mp2/lhs   self_ref")
for s in steps:
    r = s.report
    print(f"{s.t:4.1f}  {r.hr.rhs:8.5f}  {r.mp2 / r.lhs_sum:8.5f}   {r.self_referential}")
