"""Mutually unbiased bases and the shift/phase (Weyl) algebra on C^N.

Bases are built for prime-power dimensions ``N = p**k``:

* odd characteristic: over GF(p^k), basis ``a`` has vectors
  ``v_b(x) = w_p ** tr(a x^2 + b x) / sqrt(N)`` (for ``k = 1`` this is the
  familiar quadratic-phase family ``w ** (a l^2 + b l)``);
* characteristic two: over the Galois ring GR(4, k) with Teichmuller set ``T``,
  ``v_b(x) = i ** Tr((a + 2 b) x) / sqrt(N)`` for ``a, b, x`` in ``T``.  For
  ``N = 2`` this gives the X and Y eigenbases.

Together with the computational basis (always ``bases[0]``) this yields
``N + 1`` bases.  Row ``x`` of every basis matrix is indexed by the integer
whose base-``p`` digits (lowest first) are the polynomial coefficients of the
field element (for GR(4, k), of its reduction mod 2).

>>> fam = build_mub_family(3)
>>> fam.M
4
>>> bool(np.allclose(np.abs(fam.bases[1].conj().T @ fam.bases[2]), 3 ** -0.5))
True
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_PRIME_CAP",
    "FIELD_POLYNOMIALS",
    "UnsupportedDimensionError",
    "PrimePowerDim",
    "MubFamily",
    "is_prime",
    "prime_power_factor",
    "supported_dimensions",
    "build_mub_family",
    "weyl_operator",
    "bell_state",
]

DEFAULT_PRIME_CAP = 31

# Conway polynomials, coefficients lowest degree first.  The characteristic-2
# entries must be primitive so that their Hensel lift has a root of order
# 2**k - 1 in GR(4, k).
FIELD_POLYNOMIALS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
    9: (2, 2, 1),  # x^2 + 2x + 2
    25: (2, 4, 1),  # x^2 + 4x + 2
    27: (1, 2, 0, 1),  # x^3 + 2x + 1
}


class UnsupportedDimensionError(ValueError):
    """Dimension is not a prime power, or has no construction table entry."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_factor(N: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``N == p**k``; raise if ``N`` is not a prime power."""
    if N < 2:
        raise UnsupportedDimensionError(f"dimension must be >= 2, got {N}")
    p = next(d for d in range(2, N + 1) if N % d == 0)
    k, rest = 0, N
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise UnsupportedDimensionError(f"{N} is not a prime power")
    return p, k


@dataclass(frozen=True)
class PrimePowerDim:
    """A Hilbert-space dimension ``N = p**k`` with ``p`` prime and ``k >= 1``."""

    N: int
    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p) or self.k < 1 or self.p**self.k != self.N:
            raise UnsupportedDimensionError(
                f"invalid prime power: N={self.N}, p={self.p}, k={self.k}"
            )

    @classmethod
    def from_dim(cls, N: int) -> "PrimePowerDim":
        p, k = prime_power_factor(int(N))
        return cls(int(N), p, k)


def _is_supported(dim: PrimePowerDim, max_prime: int) -> bool:
    if dim.k == 1:
        return dim.p <= max_prime
    return dim.N in FIELD_POLYNOMIALS


def supported_dimensions(limit: int, max_prime: int = DEFAULT_PRIME_CAP) -> list[int]:
    """All dimensions ``2 <= N <= limit`` that :func:`build_mub_family` accepts."""
    out = []
    for N in range(2, limit + 1):
        try:
            dim = PrimePowerDim.from_dim(N)
        except UnsupportedDimensionError:
            continue
        if _is_supported(dim, max_prime):
            out.append(N)
    return out


class _PolyRing:
    """``Z_r[x] / (f)`` for monic ``f`` of degree ``k``; elements are k-tuples."""

    def __init__(self, r: int, poly: tuple[int, ...]):
        self.r = r
        self.poly = tuple(c % r for c in poly)
        self.k = len(poly) - 1
        if self.poly[-1] != 1:
            raise ValueError("defining polynomial must be monic")

    def mul(self, a, b):
        k, r, f = self.k, self.r, self.poly
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d] % r
            if c:
                for i in range(k + 1):
                    prod[d - k + i] -= c * f[i]
        return tuple(x % r for x in prod[:k])

    def trace(self, a) -> int:
        # Trace of multiplication-by-a on the basis 1, x, ..., x^(k-1).
        t = 0
        for j in range(self.k):
            e_j = tuple(int(i == j) for i in range(self.k))
            t += self.mul(a, e_j)[j]
        return t % self.r


def _digits(i: int, base: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(i % base)
        i //= base
    return tuple(out)


def _undigits(d, base: int) -> int:
    return sum(c * base**i for i, c in enumerate(d))


def _hensel_lift(f: tuple[int, ...]) -> tuple[int, ...]:
    """Lift a binary primitive polynomial to GR(4, k) (Graeffe's method)."""
    k = len(f) - 1
    even = [c if i % 2 == 0 else 0 for i, c in enumerate(f)]
    odd = [c if i % 2 == 1 else 0 for i, c in enumerate(f)]
    g = np.convolve(even, even) - np.convolve(odd, odd)
    h = [int(g[2 * i]) % 4 for i in range(k + 1)]
    if h[k] != 1:
        h = [(-c) % 4 for c in h]
    return tuple(h)


def _defining_polynomial(dim: PrimePowerDim) -> tuple[int, ...]:
    if dim.k > 1:
        return FIELD_POLYNOMIALS[dim.N]
    # GF(p): degree-one polynomial; x + 1 is primitive for p = 2.
    return (1, 1) if dim.p == 2 else (0, 1)


def _odd_bases(dim: PrimePowerDim) -> list[np.ndarray]:
    p, k, q = dim.p, dim.k, dim.N
    field = _PolyRing(p, _defining_polynomial(dim))
    elems = [_digits(i, p, k) for i in range(q)]
    mul = np.array(
        [[_undigits(field.mul(a, b), p) for b in elems] for a in elems], dtype=np.int64
    )
    tr = np.array([field.trace(a) for a in elems], dtype=np.int64)
    sq = mul[np.arange(q), np.arange(q)]
    quad = tr[mul[:, sq]]  # quad[a, x] = tr(a x^2)
    lin = tr[mul]  # lin[b, x] = tr(b x)
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    bases = []
    for a in range(q):
        expo = (quad[a][:, None] + lin.T) % p  # rows x, columns b
        bases.append(roots[expo] / np.sqrt(q))
    return bases


def _even_bases(dim: PrimePowerDim) -> list[np.ndarray]:
    k, q = dim.k, dim.N
    ring = _PolyRing(4, _hensel_lift(_defining_polynomial(dim)))
    # Root xi of the lifted polynomial: x itself, or the constant root for k = 1.
    xi = (1,) if k == 1 else tuple(int(i == 1) for i in range(k))
    teich = [tuple([0] * k)]
    z = tuple(int(i == 0) for i in range(k))
    for _ in range(q - 1):
        teich.append(z)
        z = ring.mul(z, xi)
    if z != teich[1]:
        raise RuntimeError(f"lifted root for N={q} does not have order {q - 1}")
    # Index Teichmuller elements by their reduction mod 2.
    order = sorted(range(q), key=lambda i: _undigits([c % 2 for c in teich[i]], 2))
    teich = [teich[i] for i in order]
    if [_undigits([c % 2 for c in t], 2) for t in teich] != list(range(q)):
        raise RuntimeError("Teichmuller set does not reduce onto GF(2^k)")
    tr_prod = np.array(
        [[ring.trace(ring.mul(a, x)) for x in teich] for a in teich], dtype=np.int64
    )
    roots = np.array([1, 1j, -1, -1j])
    bases = []
    for a in range(q):
        expo = (tr_prod[a][:, None] + 2 * tr_prod.T) % 4  # rows x, columns b
        bases.append(roots[expo] / np.sqrt(q))
    return bases


def _canonical_phase(vectors: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    out = vectors.astype(complex, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        first = col[np.flatnonzero(np.abs(col) > tol)[0]]
        out[:, j] = col * (np.conj(first) / abs(first))
    return out


@dataclass(frozen=True)
class MubFamily:
    """The ``N + 1`` mutually unbiased bases of C^N.

    ``bases[a][:, j]`` is vector ``j`` of basis ``a``; ``bases[0]`` is the
    computational basis.  Arrays are read-only.
    """

    dim: PrimePowerDim
    bases: tuple[np.ndarray, ...]

    @property
    def N(self) -> int:
        return self.dim.N

    @property
    def M(self) -> int:
        return len(self.bases)

    def overlaps(self) -> np.ndarray:
        """``|<psi_i^a | psi_j^b>|`` as an array indexed ``[a, b, i, j]``."""
        stack = np.stack(self.bases)
        return np.abs(np.einsum("axi,bxj->abij", stack.conj(), stack))

    def max_unbiasedness_error(self) -> float:
        """Largest deviation of a cross-basis overlap from ``1/sqrt(N)``."""
        ov = self.overlaps()
        off = ~np.eye(self.M, dtype=bool)
        return float(np.max(np.abs(ov[off] - 1 / np.sqrt(self.N))))


@functools.lru_cache(maxsize=None)
def _build(N: int, max_prime: int) -> MubFamily:
    dim = PrimePowerDim.from_dim(N)
    if not _is_supported(dim, max_prime):
        raise UnsupportedDimensionError(
            f"no construction for N={N} (primes up to {max_prime} and "
            f"prime powers {sorted(FIELD_POLYNOMIALS)} are supported)"
        )
    body = _even_bases(dim) if dim.p == 2 else _odd_bases(dim)
    bases = [np.eye(N, dtype=complex)] + [_canonical_phase(b) for b in body]
    for b in bases:
        b.setflags(write=False)
    return MubFamily(dim, tuple(bases))


def build_mub_family(dim, max_prime: int = DEFAULT_PRIME_CAP) -> MubFamily:
    """Build the complete family of ``N + 1`` mutually unbiased bases.

    Args:
        dim: the dimension, as an int or a :class:`PrimePowerDim`.
        max_prime: largest prime dimension accepted.

    Raises:
        UnsupportedDimensionError: ``N < 2``, ``N`` not a prime power, or no
            construction table entry for it.
    """
    N = dim.N if isinstance(dim, PrimePowerDim) else int(dim)
    return _build(N, max_prime)


def _check_index(m: int, n: int, N: int) -> None:
    if N < 2:
        raise ValueError(f"dimension must be >= 2, got {N}")
    if not (0 <= m < N and 0 <= n < N):
        raise ValueError(f"Weyl index ({m}, {n}) out of range for N={N}")


def weyl_operator(m: int, n: int, N: int) -> np.ndarray:
    """Shift-and-phase error operator ``U_mn = sum_k w^(kn) |k+m><k|``.

    ``m`` counts shift errors and ``n`` phase errors; for ``N = 2``,
    ``U_10`` is Pauli X and ``U_01`` is Pauli Z.
    """
    _check_index(m, n, N)
    k = np.arange(N)
    U = np.zeros((N, N), dtype=complex)
    U[(k + m) % N, k] = np.exp(2j * np.pi * ((k * n) % N) / N)
    return U


def bell_state(m: int, n: int, N: int) -> np.ndarray:
    """Generalized Bell state ``(1/sqrt N) sum_l w^(ln) |l>|l+m>`` (length ``N**2``)."""
    _check_index(m, n, N)
    psi = np.zeros(N * N, dtype=complex)
    l = np.arange(N)
    psi[l * N + (l + m) % N] = np.exp(2j * np.pi * ((l * n) % N) / N) / np.sqrt(N)
    return psi
