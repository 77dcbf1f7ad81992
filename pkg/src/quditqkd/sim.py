"""Seeded Monte Carlo of the prepare / measure / sift protocol.

Outcomes are sampled from the attack laws directly (not from per-symbol state
vectors; :func:`quditqkd.attacks.oracle` covers that route).

Random stream
-------------
Symbols are processed in blocks of :data:`BLOCK_SIZE`.  Block ``i`` draws from
``numpy.random.Generator(PCG64(SeedSequence(seed).spawn(n_blocks)[i]))`` and
consumes it array-wise, always in this order and always for every symbol of
the block (unused draws are still taken):

1. Alice's bases, ``integers(0, M)``
2. Alice's symbols, ``integers(0, N)``
3. Bob's bases, ``integers(0, M)``
4. attack draws:

   * none: Bob's random outcome, ``integers(0, N)``
   * intercept-resend: Eve's bases ``integers(0, M)``, Eve's random outcome
     ``integers(0, N)``, Bob's random outcome ``integers(0, N)``
   * cloner: outcome class ``random()``, Bob's random outcome ``integers(0, N)``

Blocks are independent, so a run can be split across workers and the counts
merged with :meth:`TranscriptStats.merge`.

Eve's record
------------
Eve's outcome in the Alice-Eve table also carries what she learns after the
bases are announced: for intercept-resend, whether her basis matched Alice's
(label ``guess + N * matched``); for the cloner, Bob's shift ``m`` (label
``guess * N + m``).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .attacks import AttackModel, Cloner, InterceptResend, NoAttack, eve_joint_probs
from .info import mutual_information
from .mub import build_mub_family

__all__ = [
    "BLOCK_SIZE",
    "ProtocolConfig",
    "Transcript",
    "TranscriptStats",
    "EmptyTranscriptError",
    "run_protocol",
    "empirical_mutual_information",
    "eve_class_counts",
    "write_transcript_csv",
    "TRANSCRIPT_COLUMNS",
    "binomial_sigma",
    "z_score",
]

BLOCK_SIZE = 1 << 16

TRANSCRIPT_COLUMNS = (
    "symbol_index",
    "alice_basis",
    "alice_symbol",
    "bob_basis",
    "bob_symbol",
    "eve_symbol",
    "sifted",
)


class EmptyTranscriptError(ValueError):
    """No sifted symbols to estimate from."""


@dataclass(frozen=True)
class ProtocolConfig:
    N: int
    M: int
    n_symbols: int
    attack: AttackModel
    seed: int

    def __post_init__(self):
        build_mub_family(self.N)  # rejects unsupported dimensions
        if not 1 <= self.M <= self.N + 1:
            raise ValueError(f"need 1 <= M <= N+1, got M={self.M} for N={self.N}")
        if self.n_symbols < 1:
            raise ValueError("n_symbols must be >= 1")
        if isinstance(self.attack, Cloner) and self.attack.asym.N != self.N:
            raise ValueError(
                f"cloner built for N={self.attack.asym.N}, protocol has N={self.N}"
            )
        if not isinstance(self.attack, (NoAttack, InterceptResend, Cloner)):
            raise TypeError(f"unknown attack model {self.attack!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _eve_record(cfg: ProtocolConfig) -> tuple[Optional[str], int]:
    """Kind of Eve's record and the number of labels it takes."""
    if isinstance(cfg.attack, InterceptResend):
        return "intercept-resend", 2 * cfg.N
    if isinstance(cfg.attack, Cloner):
        return "cloner", cfg.N * cfg.N
    return None, 0


@dataclass
class Transcript:
    """Per-symbol record; ``eve_symbol`` is -1 where Eve holds nothing."""

    symbol_index: np.ndarray
    alice_basis: np.ndarray
    alice_symbol: np.ndarray
    bob_basis: np.ndarray
    bob_symbol: np.ndarray
    eve_symbol: np.ndarray
    sifted: np.ndarray

    @classmethod
    def concat(cls, parts: list["Transcript"]) -> "Transcript":
        return cls(*(np.concatenate([getattr(p, c) for p in parts]) for c in TRANSCRIPT_COLUMNS))


@dataclass
class TranscriptStats:
    """Counts from a run.  Joint tables are normalized views of the counts."""

    N: int
    M: int
    n_symbols: int
    ab_counts: np.ndarray
    ae_counts: Optional[np.ndarray] = None
    transcript: Optional[Transcript] = field(default=None, repr=False)
    eve_record: Optional[str] = None  # "intercept-resend", "cloner" or None

    @property
    def n_sifted(self) -> int:
        return int(self.ab_counts.sum())

    @property
    def n_errors(self) -> int:
        return self.n_sifted - int(np.trace(self.ab_counts))

    @property
    def e_hat(self) -> float:
        if self.n_sifted == 0:
            raise EmptyTranscriptError("no sifted symbols")
        return self.n_errors / self.n_sifted

    @property
    def joint_ab(self) -> np.ndarray:
        return self.ab_counts / self.n_sifted

    @property
    def joint_ae(self) -> Optional[np.ndarray]:
        if self.ae_counts is None:
            return None
        return self.ae_counts / self.ae_counts.sum()

    @property
    def i_ab_hat(self) -> float:
        return empirical_mutual_information(self)[0]

    @property
    def i_ae_hat(self) -> Optional[float]:
        return empirical_mutual_information(self)[1]

    def merge(self, other: "TranscriptStats") -> "TranscriptStats":
        if (self.N, self.M, self.eve_record) != (other.N, other.M, other.eve_record):
            raise ValueError("cannot merge runs with different N, M or attack")
        ae = None
        if self.ae_counts is not None:
            ae = self.ae_counts + other.ae_counts
        tr = None
        if self.transcript is not None and other.transcript is not None:
            tr = Transcript.concat([self.transcript, other.transcript])
        return TranscriptStats(
            self.N, self.M, self.n_symbols + other.n_symbols,
            self.ab_counts + other.ab_counts, ae, tr, self.eve_record,
        )


def _cloner_classes(cfg: ProtocolConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Outcome classes as (cumulative prob, Bob shift, Eve offset from Alice)."""
    N = cfg.N
    p = eve_joint_probs(cfg.attack.asym)
    probs = [p.m0_correct] + [p.m0_other] * (N - 1) + [p.mneq0_correct] * (N - 1)
    shift = [0] * N + list(range(1, N))
    offset = [0] + list(range(1, N)) + [0] * (N - 1)
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    return cum, np.array(shift), np.array(offset)


def _run_block(cfg: ProtocolConfig, start: int, n: int, seed_seq, keep: bool):
    N, M = cfg.N, cfg.M
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    a_basis = rng.integers(0, M, n)
    a_sym = rng.integers(0, N, n)
    b_basis = rng.integers(0, M, n)
    sifted = a_basis == b_basis
    eve = np.full(n, -1, dtype=np.int64)
    eve_label = None

    if isinstance(cfg.attack, NoAttack):
        b_rand = rng.integers(0, N, n)
        b_sym = np.where(sifted, a_sym, b_rand)
    elif isinstance(cfg.attack, InterceptResend):
        e_basis = rng.integers(0, M, n)
        e_rand = rng.integers(0, N, n)
        b_rand = rng.integers(0, N, n)
        matched = e_basis == a_basis
        eve = np.where(matched, a_sym, e_rand)
        b_sym = np.where(b_basis == e_basis, eve, b_rand)
        eve_label = eve + N * matched
    else:
        u = rng.random(n)
        b_rand = rng.integers(0, N, n)
        cum, shift, offset = _cloner_classes(cfg)
        cls = np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)
        m = shift[cls]
        guess = (a_sym + offset[cls]) % N
        b_sym = np.where(sifted, (a_sym + m) % N, b_rand)
        eve = np.where(sifted, guess, -1)
        eve_label = guess * N + m

    ab = np.zeros((N, N), dtype=np.int64)
    np.add.at(ab, (a_sym[sifted], b_sym[sifted]), 1)
    kind, n_labels = _eve_record(cfg)
    ae = None
    if eve_label is not None:
        ae = np.zeros((N, n_labels), dtype=np.int64)
        np.add.at(ae, (a_sym[sifted], eve_label[sifted]), 1)
    tr = None
    if keep:
        tr = Transcript(
            np.arange(start, start + n), a_basis, a_sym, b_basis, b_sym, eve,
            sifted.astype(np.int64),
        )
    return TranscriptStats(N, M, n, ab, ae, tr, kind)


def run_protocol(cfg: ProtocolConfig, keep_transcript: bool = False) -> TranscriptStats:
    """Simulate ``cfg.n_symbols`` transmissions; deterministic given ``cfg.seed``."""
    n_blocks = -(-cfg.n_symbols // BLOCK_SIZE)
    children = np.random.SeedSequence(cfg.seed).spawn(n_blocks)
    stats = None
    for i, child in enumerate(children):
        start = i * BLOCK_SIZE
        n = min(BLOCK_SIZE, cfg.n_symbols - start)
        block = _run_block(cfg, start, n, child, keep_transcript)
        stats = block if stats is None else stats.merge(block)
    return stats


def empirical_mutual_information(stats: TranscriptStats) -> tuple[float, Optional[float]]:
    """Plug-in estimates ``(I_AB, I_AE)`` from the sifted joint counts.

    The plug-in estimator is biased upward by roughly
    ``(|X| - 1)(|Y| - 1) / (2 n_sifted ln 2)`` bits.  ``I_AE`` is ``None``
    when the attack gives Eve no record.
    """
    if stats.n_sifted == 0:
        raise EmptyTranscriptError("no sifted symbols")
    i_ab = mutual_information(stats.joint_ab)
    i_ae = None if stats.ae_counts is None else mutual_information(stats.joint_ae)
    return i_ab, i_ae


def eve_class_counts(stats: TranscriptStats) -> tuple[int, int, int]:
    """Cloner runs: counts of (m=0 & right, m=0 & wrong, m!=0 & right) records."""
    N = stats.N
    if stats.eve_record != "cloner":
        raise ValueError("transcript does not come from a cloner attack")
    c = stats.ae_counts.reshape(N, N, N)  # [alice, guess, m]
    right = np.eye(N, dtype=bool)
    m0 = c[:, :, 0]
    return (
        int(m0[right].sum()),
        int(m0[~right].sum()),
        int(c[:, :, 1:][right].sum()),
    )


def write_transcript_csv(transcript: Transcript, path_or_file) -> None:
    """Write the per-symbol transcript as CSV with a header row."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh)
        w.writerow(TRANSCRIPT_COLUMNS)
        cols = [getattr(transcript, c) for c in TRANSCRIPT_COLUMNS]
        w.writerows(zip(*(c.tolist() for c in cols)))
    finally:
        if own:
            fh.close()


def binomial_sigma(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n) if n > 0 else math.inf


def z_score(observed: float, expected: float, n: int) -> float:
    """Standardized deviation of a binomial proportion; 0 when both agree exactly."""
    if observed == expected:
        return 0.0
    sigma = binomial_sigma(expected, n)
    return (observed - expected) / sigma if sigma > 0 else math.copysign(math.inf, observed - expected)
