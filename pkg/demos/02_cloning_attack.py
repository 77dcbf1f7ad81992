"""
The asymmetric cloner
=====================

Eve keeps an approximate copy of each symbol.  One parameter trades Bob's
fidelity against hers.
"""

import numpy as np

from quditqkd.attacks import (
    cloner_from_beta,
    cloner_stats,
    intercept_resend_stats,
    oracle_stats,
    symmetric_cloner,
)

N = 3
print(" beta    F_B     F_E     I_AB    I_AE")
for beta in np.linspace(0, 1, 11):
    s = cloner_stats(cloner_from_beta(beta, N))
    print(f"{beta:5.2f}  {s.F_B:.4f}  {s.F_E:.4f}  {s.I_AB:.4f}  {s.I_AE:.4f}")

# At the symmetric point both fidelities agree...
sym = cloner_stats(symmetric_cloner(N))
print("symmetric:", sym)
# ...but Eve still learns more than Bob, because she also learns which
# error Bob's copy suffered
print("I_AE - I_AB at the symmetric point:", sym.I_AE - sym.I_AB)

# Same numbers from explicit state vectors and partial traces
print("oracle:   ", oracle_stats(symmetric_cloner(N)))

# Intercept-resend for comparison
for M in (2, N + 1):
    print(f"intercept-resend, M={M}:", intercept_resend_stats(N, M))
