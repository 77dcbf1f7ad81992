"""Secret-key rate and tolerable error rates.

The key rate per transmitted symbol is ``(I_AB - I_AE) / M``: the ``1/M``
factor is the sifting efficiency and Eve's information is charged with the
universal-cloner leakage, which is the strongest individual attack.  Two error
thresholds are provided:

* incoherent: the error rate at which the cloner's ``I_AE`` catches up with
  ``I_AB`` (zero of the key rate);
* coherent: the error rate at which ``I_AB`` drops to ``log2(N) / 2``, the most
  Bob can hold if ``I_AB >= I_AE`` is to survive the two-observable bound
  ``I_AB + I_AE <= log2 N`` for complementary measurements.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .attacks import cloner_from_beta, i_ab_cloner, i_ae_cloner
from .info import i_ab_symmetric
from .roots import bisect

__all__ = [
    "ThresholdKind",
    "ThresholdResult",
    "RatePoint",
    "BRACKET_EPS",
    "beta_for_error",
    "information_gap",
    "rate_ab",
    "incoherent_threshold",
    "symmetric_cloner_error",
    "coherent_threshold",
    "coherent_lhs",
    "hall_sum_bound",
    "threshold",
]

BRACKET_EPS = 1e-15
RESIDUAL_TOL = 1e-12


class ThresholdKind(str, enum.Enum):
    INCOHERENT = "incoherent"
    COHERENT = "coherent"


@dataclass(frozen=True)
class ThresholdResult:
    N: int
    e_max: float
    kind: ThresholdKind
    residual: float


@dataclass(frozen=True)
class RatePoint:
    N: int
    M: int
    e_B: float
    R_AB: float


def _max_error(N: int) -> float:
    return (N - 1) / N


def beta_for_error(N: int, e_B: float) -> float:
    """Cloner ``beta`` producing Bob error rate ``e_B = (N-1) beta^2 / N``."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if not 0.0 <= e_B <= _max_error(N):
        raise ValueError(f"e_B={e_B} outside [0, {_max_error(N)}] for N={N}")
    return min(1.0, math.sqrt(N * e_B / (N - 1)))


def information_gap(N: int, beta: float) -> float:
    """``I_AB - I_AE`` for the cloner with the given ``beta``."""
    asym = cloner_from_beta(beta, N)
    return i_ab_cloner(asym) - i_ae_cloner(asym)


def rate_ab(N: int, M: int, e_B: float) -> RatePoint:
    """Secret-key bits per transmitted symbol at Bob error rate ``e_B``.

    >>> rate_ab(2, 3, 0.0).R_AB == 1 / 3
    True
    """
    if not 1 <= M <= N + 1:
        raise ValueError(f"need 1 <= M <= N+1, got M={M} for N={N}")
    beta = beta_for_error(N, e_B)
    return RatePoint(N, M, float(e_B), information_gap(N, beta) / M)


def incoherent_threshold(N: int) -> ThresholdResult:
    """Largest error rate with a positive key rate under the cloner attack.

    Found by bisection on ``beta`` over ``[0, 1]`` for the zero of
    ``I_AB - I_AE``.
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    beta, res = bisect(lambda b: information_gap(N, b), 0.0, 1.0, ftol=RESIDUAL_TOL)
    e_max = (N - 1) * beta * beta / N
    return ThresholdResult(N, e_max, ThresholdKind.INCOHERENT, res)


def symmetric_cloner_error(N: int) -> float:
    """Bob's error rate when the cloner gives Bob and Eve equal fidelity."""
    return (N - 1) / (2.0 * (N + 1))


def coherent_lhs(N: int, e: float) -> float:
    """``(1-e) log2(1-e) + e log2(e/(N-1))``; security needs this ``<= -log2(N)/2``."""
    return i_ab_symmetric(N, e) - math.log2(N)


def coherent_threshold(N: int) -> ThresholdResult:
    """Error rate at which ``I_AB`` falls to half of ``log2 N``."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    half = 0.5 * math.log2(N)
    e, res = bisect(
        lambda e: coherent_lhs(N, e) + half,
        BRACKET_EPS,
        _max_error(N) - BRACKET_EPS,
        ftol=RESIDUAL_TOL,
    )
    return ThresholdResult(N, e, ThresholdKind.COHERENT, res)


def threshold(N: int, kind: ThresholdKind | str = ThresholdKind.INCOHERENT) -> ThresholdResult:
    kind = ThresholdKind(kind)
    if kind is ThresholdKind.INCOHERENT:
        return incoherent_threshold(N)
    return coherent_threshold(N)


def hall_sum_bound(N: int, n_symbols: int = 1) -> float:
    """Upper bound ``n log2 N`` on ``I_AB + I_AE`` for ``n`` complementary-measured symbols."""
    if N < 2 or n_symbols < 1:
        raise ValueError("need N >= 2 and n_symbols >= 1")
    return n_symbols * math.log2(N)
