"""Shannon information for discrete channels, in bits.

Distributions are plain array-likes; they are validated on entry and never
mutated.  ``0 log 0`` is taken as 0 throughout.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "PROB_TOL",
    "ZeroMarginalError",
    "as_distribution",
    "as_joint",
    "shannon_entropy",
    "bayes_posterior",
    "conditional_entropy",
    "mutual_information",
    "symmetric_joint",
    "i_ab_symmetric",
    "xlog2y",
]

PROB_TOL = 1e-9


class ZeroMarginalError(ValueError):
    """The requested outcome has zero marginal probability."""


def xlog2y(x, y):
    """``x * log2(y)`` with the convention ``0 * log2(anything) = 0``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nz = x != 0
    safe_y = np.where(nz, y, 1.0)
    out = np.where(nz, x * np.log2(safe_y), 0.0)
    return out[()] if out.ndim == 0 else out


def _check_probs(p: np.ndarray, what: str) -> np.ndarray:
    if p.size == 0:
        raise ValueError(f"{what} is empty")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"{what} has non-finite entries")
    if np.any(p < -PROB_TOL):
        raise ValueError(f"{what} has negative entries")
    total = p.sum()
    if abs(total - 1.0) > PROB_TOL:
        raise ValueError(f"{what} sums to {total!r}, not 1")
    return np.clip(p, 0.0, None)


def as_distribution(p) -> np.ndarray:
    """Validate a probability vector and return it as a float array."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise ValueError("distribution must be one-dimensional")
    return _check_probs(p, "distribution")


def as_joint(joint) -> np.ndarray:
    """Validate a joint ``p(x, y)`` table (rows: sender, columns: receiver)."""
    joint = np.asarray(joint, dtype=float)
    if joint.ndim != 2:
        raise ValueError("joint distribution must be two-dimensional")
    return _check_probs(joint, "joint distribution")


def shannon_entropy(p) -> float:
    """Entropy ``-sum p log2 p`` of a probability vector.

    >>> shannon_entropy([0.5, 0.25, 0.25])
    1.5
    """
    p = as_distribution(p)
    return float(max(0.0, -np.sum(xlog2y(p, p))))


def bayes_posterior(joint, y: int) -> np.ndarray:
    """Posterior ``p(x | y) = p(y | x) p(x) / p(y)`` from a joint table.

    Raises:
        ZeroMarginalError: if ``p(y) == 0``.
    """
    joint = as_joint(joint)
    if not 0 <= y < joint.shape[1]:
        raise IndexError(f"outcome {y} out of range")
    col = joint[:, y]
    py = col.sum()
    if py <= 0.0:
        raise ZeroMarginalError(f"outcome {y} has zero marginal probability")
    return col / py


def conditional_entropy(joint) -> float:
    """A-posteriori entropy ``sum_y p(y) H(X | Y = y)``.

    Outcomes with ``p(y) = 0`` carry no weight and are skipped.
    """
    joint = as_joint(joint)
    h = 0.0
    for y in range(joint.shape[1]):
        py = joint[:, y].sum()
        if py > 0.0:
            h += py * shannon_entropy(bayes_posterior(joint, y))
    return h


def mutual_information(joint) -> float:
    """Receiver's information gain about the sender's symbol.

    Computed as the entropy decrease ``H(X) - sum_y p(y) H(X | y)``.  Result
    is clipped at zero against rounding.
    """
    joint = as_joint(joint)
    h_prior = shannon_entropy(joint.sum(axis=1))
    return max(0.0, float(h_prior - conditional_entropy(joint)))


def symmetric_joint(N: int, e: float) -> np.ndarray:
    """Joint table of a uniform-input N-ary symmetric channel with error rate ``e``."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if not 0.0 <= e <= 1.0:
        raise ValueError(f"error rate must be in [0, 1], got {e}")
    off = e / (N - 1)
    cond = np.full((N, N), off)
    np.fill_diagonal(cond, 1.0 - e)
    return cond / N


def i_ab_symmetric(N: int, e: float) -> float:
    """Alice-Bob information when every wrong symbol is equally likely.

    ``log2 N + (1-e) log2(1-e) + e log2(e / (N-1))``.

    >>> i_ab_symmetric(2, 0.0)
    1.0
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if not 0.0 <= e <= 1.0:
        raise ValueError(f"error rate must be in [0, 1], got {e}")
    return float(np.log2(N) + xlog2y(1.0 - e, 1.0 - e) + xlog2y(e, e / (N - 1)))
