"""
Dark counts and distance
========================

With weak pulses over lossy fibre the signal fades while dark counts do not,
so the error rate grows with length until no key survives.
"""

import numpy as np

from quditqkd.realistic import LinkParams, max_distance, qber, rate_vs_distance

link = LinkParams(N=2)
print(link)
print("QBER at 0 km:", qber(link))

for L, q, r in rate_vs_distance(link, np.arange(0, 141, 20)):
    print(f"{L:6.1f} km  QBER {q:.5f}  rate {r:+.4f}")

# Maximum distance per dimension, for both kinds of threshold
for N in (2, 3, 4, 8):
    lp = LinkParams(N=N)
    print(f"N={N}: {max_distance(lp):7.2f} km (individual), "
          f"{max_distance(lp, 'coherent'):7.2f} km (coherent)")
