"""
Mutually unbiased bases
=======================

Build complete families of N+1 bases for prime and prime-power dimensions and
check that they are unbiased.
"""

import itertools

import numpy as np

from quditqkd.mub import bell_state, build_mub_family, supported_dimensions, weyl_operator

# Every dimension the library can build out of the box
print("supported:", supported_dimensions(32))

# A qutrit family: the computational basis plus three Fourier-type bases
fam = build_mub_family(3)
np.set_printoptions(precision=3, suppress=True)
for a, B in enumerate(fam.bases):
    print(f"basis {a}:\n{B}")

# All cross-basis overlaps have magnitude 1/sqrt(3)
print("max |overlap| deviation:", fam.max_unbiasedness_error())

# Characteristic two goes through a Galois ring instead of a field
for N in (4, 8, 16):
    print(N, "->", build_mub_family(N).max_unbiasedness_error())

# Weyl operators acting on one half of the Bell state give all N^2 Bell states
N = 3
phi = bell_state(0, 0, N)
worst = 0.0
for m, n in itertools.product(range(N), repeat=2):
    out = np.kron(np.eye(N), weyl_operator(m, n, N)) @ phi
    worst = max(worst, 1 - abs(np.vdot(bell_state(m, n, N), out)))
print("Bell-state generation error:", worst)
