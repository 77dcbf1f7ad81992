"""
Tolerable error rates
=====================

Key rate against Bob's error rate, and the largest error rate that still
leaves a positive rate, for individual and coherent attacks.
"""

import numpy as np

from quditqkd.mub import supported_dimensions
from quditqkd.security import coherent_threshold, incoherent_threshold, rate_ab

# Rate per transmitted symbol with all N+1 bases in use
for N in (2, 3, 4, 8):
    es = np.linspace(0, 0.3, 7)
    rates = " ".join(f"{rate_ab(N, N + 1, e).R_AB:+.3f}" for e in es)
    print(f"N={N:2d}: {rates}")

# Both thresholds grow with dimension; coherent attacks cost more
print("\n N   incoherent  coherent")
for N in supported_dimensions(32):
    print(f"{N:2d}   {incoherent_threshold(N).e_max:.6f}    {coherent_threshold(N).e_max:.6f}")
