"""Eavesdropping models: intercept-resend and the asymmetric universal cloner.

The cloner is parametrized by amplitudes ``(alpha, beta)`` with
``alpha**2 + 2 alpha beta / N + beta**2 = 1``.  ``beta = 0`` leaves Bob's
state untouched; ``alpha = 0`` hands Eve a perfect copy.

Eve measures both her clone ``E`` and the machine ``M`` in the announced
basis.  Matching outcomes tell her Bob received the symbol unharmed
(``m = 0``); otherwise she learns Bob's shift ``m`` and knows Alice's symbol
for certain.  The closed forms below encode that recipe, and
:func:`oracle_stats` re-derives them from the full ``N**3`` output state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .info import i_ab_symmetric, mutual_information, xlog2y
from .mub import bell_state, weyl_operator

__all__ = [
    "NORM_TOL",
    "ORACLE_MAX_N",
    "ClonerAsymmetry",
    "NoAttack",
    "InterceptResend",
    "Cloner",
    "AttackModel",
    "AttackStats",
    "EveJointProbs",
    "intercept_resend_stats",
    "cloner_from_beta",
    "symmetric_cloner",
    "fidelities",
    "eve_joint_probs",
    "i_ab_cloner",
    "i_ae_cloner",
    "i_ae_cloner_fidelity_form",
    "i_ae_conditional",
    "cloner_stats",
    "cloner_amplitudes",
    "cloner_output_state",
    "cloner_output_state_from_bell",
    "cloner_isometry",
    "OracleResult",
    "oracle",
    "oracle_stats",
]

NORM_TOL = 1e-12
ORACLE_MAX_N = 7


@dataclass(frozen=True)
class ClonerAsymmetry:
    """Cloner amplitudes for dimension ``N`` (non-negative branch)."""

    alpha: float
    beta: float
    N: int

    def __post_init__(self):
        a, b, N = self.alpha, self.beta, self.N
        if N < 2:
            raise ValueError(f"N must be >= 2, got {N}")
        if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
            raise ValueError(f"amplitudes must lie in [0, 1], got ({a}, {b})")
        norm = a * a + 2.0 * a * b / N + b * b
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"cloner normalization violated: {norm!r} != 1")


@dataclass(frozen=True)
class NoAttack:
    pass


@dataclass(frozen=True)
class InterceptResend:
    pass


@dataclass(frozen=True)
class Cloner:
    asym: ClonerAsymmetry


AttackModel = Union[NoAttack, InterceptResend, Cloner]


@dataclass(frozen=True)
class AttackStats:
    """Error rate, fidelities and informations (bits) of one attack."""

    e_B: float
    F_B: float
    F_E: float
    I_AB: float
    I_AE: float


class EveJointProbs(NamedTuple):
    """Per-outcome joint probabilities of Eve's ``(m, guess)`` record.

    ``m0_correct``: no error for Bob and Eve's guess is right.
    ``m0_other``: no error for Bob, Eve guesses one particular wrong symbol.
    ``mneq0_correct``: Bob gets one particular shift ``m != 0``; Eve is right.
    """

    m0_correct: float
    m0_other: float
    mneq0_correct: float


def intercept_resend_stats(N: int, M: int) -> AttackStats:
    """Eve measures in a random one of the ``M`` bases and resends her result."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if not 1 <= M <= N + 1:
        raise ValueError(f"need 1 <= M <= N+1, got M={M} for N={N}")
    e_B = (1.0 - 1.0 / M) * (1.0 - 1.0 / N)
    F = 1.0 - e_B
    return AttackStats(e_B, F, F, i_ab_symmetric(N, e_B), math.log2(N) / M)


def cloner_from_beta(beta: float, N: int) -> ClonerAsymmetry:
    """Complete ``beta`` to a normalized cloner, taking the non-negative root."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    alpha = -beta / N + math.sqrt(beta * beta / (N * N) + 1.0 - beta * beta)
    return ClonerAsymmetry(max(alpha, 0.0), float(beta), N)


def symmetric_cloner(N: int) -> ClonerAsymmetry:
    """The ``alpha == beta`` cloner, giving Bob and Eve equal fidelity."""
    a = math.sqrt(N / (2.0 * (N + 1)))
    return ClonerAsymmetry(a, a, N)


def _check_n(asym: ClonerAsymmetry, N: int | None) -> int:
    if N is not None and N != asym.N:
        raise ValueError(f"asymmetry built for N={asym.N}, used with N={N}")
    return asym.N


def fidelities(asym: ClonerAsymmetry, N: int | None = None) -> tuple[float, float]:
    """``(F_B, F_E)``: probability that Bob's / Eve's copy yields Alice's symbol."""
    N = _check_n(asym, N)
    F_B = 1.0 - (N - 1) * asym.beta**2 / N
    F_E = 1.0 - (N - 1) * asym.alpha**2 / N
    return F_B, F_E


def eve_joint_probs(asym: ClonerAsymmetry, N: int | None = None) -> EveJointProbs:
    N = _check_n(asym, N)
    a, b = asym.alpha, asym.beta
    return EveJointProbs((a + b) ** 2 / N, a * a / N, b * b / N)


def i_ab_cloner(asym: ClonerAsymmetry, N: int | None = None) -> float:
    N = _check_n(asym, N)
    F_B, _ = fidelities(asym)
    return float(math.log2(N) + xlog2y(F_B, F_B) + xlog2y(1.0 - F_B, (1.0 - F_B) / (N - 1)))


def i_ae_conditional(asym: ClonerAsymmetry, N: int | None = None) -> tuple[float, float]:
    """Eve's information given ``m == 0`` and given ``m != 0``."""
    N = _check_n(asym, N)
    F_B, _ = fidelities(asym)
    p = eve_joint_probs(asym)
    right = p.m0_correct / F_B
    wrong = p.m0_other / F_B
    h = -(xlog2y(right, right) + (N - 1) * xlog2y(wrong, wrong))
    return float(math.log2(N) - h), math.log2(N)


def i_ae_cloner(asym: ClonerAsymmetry, N: int | None = None) -> float:
    """Alice-Eve information, written in the cloner amplitudes."""
    N = _check_n(asym, N)
    a, b = asym.alpha, asym.beta
    F_B, _ = fidelities(asym)
    val = (
        math.log2(N)
        + xlog2y((a + b) ** 2 / N, (a + b) ** 2 / (N * F_B))
        + xlog2y((N - 1) / N * a * a, a * a / (N * F_B))
    )
    return float(val)


def i_ae_cloner_fidelity_form(asym: ClonerAsymmetry, N: int | None = None) -> float:
    """Alice-Eve information, written in ``F_B`` and ``F_E``."""
    N = _check_n(asym, N)
    F_B, F_E = fidelities(asym)
    s = F_B + F_E - 1.0
    val = math.log2(N) + xlog2y(s, s / F_B) + xlog2y(1.0 - F_E, (1.0 - F_E) / ((N - 1) * F_B))
    return float(val)


def cloner_stats(asym: ClonerAsymmetry) -> AttackStats:
    F_B, F_E = fidelities(asym)
    return AttackStats(1.0 - F_B, F_B, F_E, i_ab_cloner(asym), i_ae_cloner(asym))


# --- state-vector oracle ---------------------------------------------------


def cloner_amplitudes(asym: ClonerAsymmetry) -> np.ndarray:
    """The universal amplitude table ``a[m, n] = alpha d_m0 d_n0 + beta / N``."""
    N = asym.N
    a = np.full((N, N), asym.beta / N)
    a[0, 0] += asym.alpha
    return a


def _validate_k(k: int, N: int) -> None:
    if not 0 <= k < N:
        raise ValueError(f"symbol index {k} out of range for N={N}")


def cloner_output_state(k: int, asym: ClonerAsymmetry) -> np.ndarray:
    """Output of the cloner on ``|k>``, ordered Bob (x) Eve (x) machine.

    Built term by term from the expanded transformation: the no-error branch
    ``|k>_B (alpha/sqrt N sum_l |l l> + beta/sqrt N |k k>)`` plus one
    ``beta/sqrt N |k+m>_B |k>_E |k+m>_M`` term per shift ``m != 0``.
    """
    N = asym.N
    _validate_k(k, N)
    psi = np.zeros(N**3, dtype=complex)

    def idx(b, e, m):
        return (b % N) * N * N + (e % N) * N + (m % N)

    s = math.sqrt(N)
    for l in range(N):
        psi[idx(k, l, l)] += asym.alpha / s
    psi[idx(k, k, k)] += asym.beta / s
    for m in range(1, N):
        psi[idx(k + m, k, k + m)] += asym.beta / s
    return psi


def cloner_output_state_from_bell(k: int, asym: ClonerAsymmetry) -> np.ndarray:
    """Same output state, assembled as ``sum a_mn U_mn|k> (x) |Psi_{m,-n}>``."""
    N = asym.N
    _validate_k(k, N)
    amps = cloner_amplitudes(asym)
    ket = np.zeros(N, dtype=complex)
    ket[k] = 1.0
    psi = np.zeros(N**3, dtype=complex)
    for m in range(N):
        for n in range(N):
            psi += amps[m, n] * np.kron(weyl_operator(m, n, N) @ ket, bell_state(m, (-n) % N, N))
    return psi


def cloner_isometry(asym: ClonerAsymmetry) -> np.ndarray:
    """``N**3 x N`` matrix whose column ``k`` is the output on ``|k>``."""
    return np.stack([cloner_output_state(k, asym) for k in range(asym.N)], axis=1)


class OracleResult(NamedTuple):
    """Brute-force statistics, averaged over Alice's symbol.

    ``eve_m0_other`` and ``eve_mneq0_correct`` are averaged over the
    ``N - 1`` individual outcomes; the ``*_spread`` fields give the largest
    deviation of any single outcome from that average.  ``eve_mneq0_wrong``
    is the total weight of outcomes the cloner should never produce.
    ``joint_ab`` and ``joint_ae`` are the Alice-Bob and Alice-Eve joint tables,
    Eve's outcome being labelled ``guess * N + m``.
    """

    F_B: float
    F_E: float
    eve: EveJointProbs
    m0_other_spread: float
    mneq0_correct_spread: float
    eve_mneq0_wrong: float
    joint_ab: np.ndarray
    joint_ae: np.ndarray


def oracle(asym: ClonerAsymmetry) -> OracleResult:
    """Partial traces and projective measurements on the explicit output state."""
    N = asym.N
    if N > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to N <= {ORACLE_MAX_N}, got {N}")
    F_B = F_E = 0.0
    m0_correct = 0.0
    m0_other = np.zeros(N - 1)
    mneq0_correct = np.zeros(N - 1)
    mneq0_wrong = 0.0
    joint_ab = np.zeros((N, N))
    joint_ae = np.zeros((N, N * N))
    for k in range(N):
        T = cloner_output_state(k, asym).reshape(N, N, N)  # [b, e, mach]
        rho_B = np.einsum("bem,cem->bc", T, T.conj())
        rho_E = np.einsum("bem,bfm->ef", T, T.conj())
        F_B += rho_B[k, k].real / N
        F_E += rho_E[k, k].real / N
        probs = np.abs(T) ** 2  # Bob, Eve and machine all measured in Alice's basis
        joint_ab[k] = probs.sum(axis=(1, 2)) / N
        p_em = probs.sum(axis=0)  # [e, mach]
        for e in range(N):
            for mach in range(N):
                shift = (mach - e) % N
                p = p_em[e, mach]
                joint_ae[k, e * N + shift] += p / N
                if shift == 0 and e == k:
                    m0_correct += p / N
                elif shift == 0:
                    m0_other[(e - k) % N - 1] += p / N
                elif e == k:
                    mneq0_correct[shift - 1] += p / N
                else:
                    mneq0_wrong += p / N
    eve = EveJointProbs(m0_correct, float(m0_other.mean()), float(mneq0_correct.mean()))
    return OracleResult(
        float(F_B),
        float(F_E),
        eve,
        float(np.max(np.abs(m0_other - eve.m0_other))),
        float(np.max(np.abs(mneq0_correct - eve.mneq0_correct))),
        float(mneq0_wrong),
        joint_ab,
        joint_ae,
    )


def oracle_stats(asym: ClonerAsymmetry) -> AttackStats:
    """Attack statistics computed only from the explicit output state."""
    res = oracle(asym)
    return AttackStats(
        1.0 - res.F_B,
        res.F_B,
        res.F_E,
        mutual_information(res.joint_ab),
        mutual_information(res.joint_ae),
    )
