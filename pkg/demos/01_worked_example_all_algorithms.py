"""Every placement route applied to one small worked example.

The system is a 3x3 single-input pair with integer entries; the target
spectrum is {-1, -2, -3}.  All nine algorithm variants must agree on the
unique gain K = (4, 15/2, 19/2), and the exact rational oracle confirms
that value is not an accident of rounding.
"""

import numpy as np

from poleplace import ALGORITHMS, BITS64, StateSpace, eigenvalues
from poleplace.exactring import place_exact, ratio

system = StateSpace(A=[[1, 3, 5], [7, 13, 17], [1, 1, 1]], B=[1, 1, 1])
poles = [-1.0, -2.0, -3.0]

print("A =")
print(system.A)
print("B =", system.B)
print("targets:", poles)
print()

print(f"{'algorithm':<20} {'gain':<40} max |eig error|")
for name in sorted(ALGORITHMS):
    K = ALGORITHMS[name](system, poles, BITS64)
    achieved = eigenvalues(system.A - np.outer(system.B, K))
    err = np.max(np.abs(np.sort(achieved.real) - np.sort(poles)))
    gain_str = "  ".join(f"{g:.10g}" for g in K)
    print(f"{name:<20} ({gain_str})   {err:.2e}")

print()
gain = place_exact([[1, 3, 5], [7, 13, 17], [1, 1, 1]], [1, 1, 1], [1, 6, 11, 6])
print("exact rational gain:", ", ".join(str(f) for f in ratio(gain)))
print("                     (so 4, 7.5, 9.5 is exact, not rounded)")
