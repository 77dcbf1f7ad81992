"""Security analysis of BB84-type key distribution with N-level (qudit) encoding.

Modules:

* :mod:`~quditqkd.mub`: mutually unbiased bases, Weyl operators, Bell states
* :mod:`~quditqkd.info`: Shannon entropies and mutual information (bits)
* :mod:`~quditqkd.attacks`: intercept-resend and universal-cloner attacks
* :mod:`~quditqkd.security`: key rate and tolerable error rates
* :mod:`~quditqkd.realistic`: dark-count limited fibre links
* :mod:`~quditqkd.sim`: seeded Monte Carlo of the protocol
"""

from .attacks import (
    AttackStats,
    Cloner,
    ClonerAsymmetry,
    InterceptResend,
    NoAttack,
    cloner_from_beta,
    cloner_stats,
    fidelities,
    i_ab_cloner,
    i_ae_cloner,
    intercept_resend_stats,
    symmetric_cloner,
)
from .info import i_ab_symmetric, mutual_information, shannon_entropy
from .mub import MubFamily, PrimePowerDim, bell_state, build_mub_family, weyl_operator
from .realistic import LinkParams, max_distance, qber
from .security import coherent_threshold, hall_sum_bound, incoherent_threshold, rate_ab
from .sim import ProtocolConfig, run_protocol

__version__ = "0.1.0"
