"""
Simulating the protocol
=======================

Seeded Monte Carlo runs compared with the closed-form predictions.
"""

from quditqkd.attacks import Cloner, InterceptResend, NoAttack, cloner_stats, intercept_resend_stats, symmetric_cloner
from quditqkd.sim import ProtocolConfig, run_protocol, z_score

n = 100_000
for N in (2, 3, 5):
    for attack in (NoAttack(), InterceptResend(), Cloner(symmetric_cloner(N))):
        s = run_protocol(ProtocolConfig(N, 2, n, attack, seed=2024))
        if isinstance(attack, InterceptResend):
            expect = intercept_resend_stats(N, 2)
        elif isinstance(attack, Cloner):
            expect = cloner_stats(attack.asym)
        else:
            expect = None
        line = f"N={N} {type(attack).__name__:15s} sifted {s.n_sifted:6d}  e_hat {s.e_hat:.4f}"
        if expect is not None:
            line += f" (z {z_score(s.e_hat, expect.e_B, s.n_sifted):+.2f})"
            line += f"  I_AE {s.i_ae_hat:.3f} vs {expect.I_AE:.3f}"
        print(line)

# Identical seeds give identical runs
a = run_protocol(ProtocolConfig(3, 4, 1000, InterceptResend(), seed=1))
b = run_protocol(ProtocolConfig(3, 4, 1000, InterceptResend(), seed=1))
print("reproducible:", (a.ab_counts == b.ab_counts).all())
