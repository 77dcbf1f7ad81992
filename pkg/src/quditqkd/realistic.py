"""Dark-count limited error rate of a fibre link and the resulting secure range.

Only detector dark counts produce errors.  A detection in the right basis
happens with probability ``mu * eta_D * T(L) / M``, where the fibre
transmittance is ``T(L) = 10 ** (-alpha_dB * L / 10)``.  A wrong symbol
registers with probability ``p_dark * (N - 1) / M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .roots import bisect
from .security import ThresholdKind, rate_ab, threshold

__all__ = [
    "LinkParams",
    "NoSecureDistanceError",
    "DeadLinkError",
    "transmittance",
    "p_correct",
    "p_incorrect",
    "qber",
    "rate_vs_distance",
    "max_distance",
    "max_distance_bisect",
]


class NoSecureDistanceError(ValueError):
    """The link is insecure already at zero length."""


class DeadLinkError(ZeroDivisionError):
    """No photon can reach Bob, so the error rate is undefined."""


@dataclass(frozen=True)
class LinkParams:
    """Physical link parameters.  Defaults are typical fibre/APD values.

    ``M`` defaults to ``N + 1`` (the full set of unbiased bases).
    """

    mu: float = 0.1
    eta_D: float = 0.2
    alpha_db_per_km: float = 0.2
    L_km: float = 0.0
    p_dark: float = 1e-5
    N: int = 2
    M: int | None = None

    def __post_init__(self):
        if self.M is None:
            object.__setattr__(self, "M", self.N + 1)
        for name in ("mu", "eta_D", "alpha_db_per_km", "L_km", "p_dark"):
            v = getattr(self, name)
            if not (v >= 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and non-negative, got {v}")
        if self.eta_D > 1.0:
            raise ValueError(f"eta_D must be <= 1, got {self.eta_D}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if not 1 <= self.M <= self.N + 1:
            raise ValueError(f"need 1 <= M <= N+1, got M={self.M} for N={self.N}")

    def at(self, L_km: float) -> "LinkParams":
        return replace(self, L_km=L_km)


def transmittance(lp: LinkParams) -> float:
    return 10.0 ** (-lp.alpha_db_per_km * lp.L_km / 10.0)


def p_correct(lp: LinkParams) -> float:
    return lp.mu * lp.eta_D * transmittance(lp) / lp.M


def p_incorrect(lp: LinkParams) -> float:
    return lp.p_dark * (lp.N - 1) / lp.M


def qber(lp: LinkParams, exact: bool = False) -> float:
    """Symbol error rate among sifted detections.

    The default is the small-error approximation ``P_inc / P_corr``;
    ``exact=True`` returns ``P_inc / (P_inc + P_corr)``.

    Raises:
        DeadLinkError: if no correct detection is possible.
    """
    pc, pi = p_correct(lp), p_incorrect(lp)
    if pc <= 0.0:
        raise DeadLinkError("p_correct is zero: no signal reaches Bob")
    return pi / (pi + pc) if exact else pi / pc


def rate_vs_distance(lp: LinkParams, L_grid, exact: bool = False) -> list[tuple[float, float, float]]:
    """``(L, QBER, R_AB)`` along an ascending distance grid.

    The error rate fed to the key-rate formula is capped at ``(N-1)/N``.
    """
    L_grid = [float(L) for L in L_grid]
    if any(b < a for a, b in zip(L_grid, L_grid[1:])):
        raise ValueError("distance grid must be sorted ascending")
    e_cap = (lp.N - 1) / lp.N
    out = []
    for L in L_grid:
        q = qber(lp.at(L), exact=exact)
        out.append((L, q, rate_ab(lp.N, lp.M, min(q, e_cap)).R_AB))
    return out


def _target_ratio(e_max: float, exact: bool) -> float:
    # P_inc / P_corr at which the QBER reaches e_max.
    return e_max / (1.0 - e_max) if exact else e_max


def max_distance(
    lp: LinkParams,
    kind: ThresholdKind | str = ThresholdKind.INCOHERENT,
    exact: bool = False,
) -> float:
    """Length at which the QBER reaches the chosen security threshold.

    Returns ``math.inf`` for a noiseless detector (``p_dark == 0``) or a
    lossless fibre that is secure at the origin.

    Raises:
        NoSecureDistanceError: if the QBER at ``L = 0`` is already at or
            above the threshold.
    """
    e_max = threshold(lp.N, kind).e_max
    q0 = qber(lp.at(0.0), exact=exact)
    if q0 >= e_max:
        raise NoSecureDistanceError(
            f"QBER at L=0 is {q0:.6g} >= threshold {e_max:.6g} for N={lp.N}"
        )
    if lp.p_dark == 0.0 or lp.alpha_db_per_km == 0.0:
        return math.inf
    ratio = _target_ratio(e_max, exact)
    return (10.0 / lp.alpha_db_per_km) * math.log10(
        lp.mu * lp.eta_D * ratio / (lp.p_dark * (lp.N - 1))
    )


def max_distance_bisect(
    lp: LinkParams,
    kind: ThresholdKind | str = ThresholdKind.INCOHERENT,
    exact: bool = False,
) -> float:
    """Numerical counterpart of :func:`max_distance`.

    For the incoherent threshold this brackets the zero of the key rate along
    the link; for the coherent one, the point where the QBER meets the bound.
    """
    kind = ThresholdKind(kind)
    e_max = threshold(lp.N, kind).e_max
    if qber(lp.at(0.0), exact=exact) >= e_max:
        raise NoSecureDistanceError(f"no secure distance for N={lp.N}")
    if lp.p_dark == 0.0 or lp.alpha_db_per_km == 0.0:
        return math.inf
    e_cap = (lp.N - 1) / lp.N

    if kind is ThresholdKind.INCOHERENT:
        def g(L):
            return rate_ab(lp.N, lp.M, min(qber(lp.at(L), exact=exact), e_cap)).R_AB
    else:
        def g(L):
            return e_max - qber(lp.at(L), exact=exact)

    hi = 1.0
    while g(hi) > 0.0:
        hi *= 2.0
    L, _ = bisect(g, 0.0, hi, ftol=0.0)
    return L
