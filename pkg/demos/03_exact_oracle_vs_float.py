"""Exact rational placement as ground truth for the float algorithms.

On the all-integer family the gain can be computed with ring operations
only, so it is exact.  Two observations follow: (1) at moderate n every
float algorithm reproduces the exact gain almost to machine precision,
and (2) past n = 11 even the exact gain fails to place the poles
accurately when the closed loop is *evaluated* in 64-bit arithmetic --
the limit is the representation, not the placement algorithm.
"""

import numpy as np

from poleplace import BITS64, eigenvalues, gen_integer_example
from poleplace.exactring import place_exact, ratio
from poleplace.placement import place_algebroid1, place_algebroid2


def int_poly(roots):
    p = [1]
    for r in roots:
        p = [a - r * b for a, b in zip(p + [0], [0] + p)]
    return p


print("n    alg1 vs exact   alg2 vs exact   exact-gain eig error")
for n in range(4, 13):
    sys = gen_integer_example(n)
    poles = [-(k + 1) for k in range(n)]
    gain = place_exact(sys.A.astype(int).tolist(), sys.B.astype(int).tolist(),
                       int_poly(poles))
    Kex = np.array([float(f) for f in ratio(gain)])
    K1 = place_algebroid1(sys, [float(p) for p in poles], precision=BITS64)
    K2 = place_algebroid2(sys, [float(p) for p in poles], precision=BITS64)
    gap1 = np.linalg.norm(K1 - Kex) / np.linalg.norm(Kex)
    gap2 = np.linalg.norm(K2 - Kex) / np.linalg.norm(Kex)
    ev = eigenvalues(sys.A - np.outer(sys.B, Kex))
    eig_err = np.max(np.abs(np.sort(ev.real) - np.sort(poles)))
    flag = " <- bifurcated" if np.max(ev.imag) > 1e-9 else ""
    print(f"{n:<4} {gap1:.2e}        {gap2:.2e}        {eig_err:.2e}{flag}")

print()
n = 12
sys = gen_integer_example(n)
gain = place_exact(sys.A.astype(int).tolist(), sys.B.astype(int).tolist(),
                   int_poly([-(k + 1) for k in range(n)]))
print(f"the n = {n} exact gain needs big rationals, e.g. first entry:")
print(" ", ratio(gain)[0])
