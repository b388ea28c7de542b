"""Angular-momentum bookkeeping for a collection of spin-1/2 particles.

Half-integer labels are stored doubled so that every comparison on ``j`` and
``m`` is exact integer arithmetic.  Only the fully symmetric ``j = N/2``
sector is ever given explicit vectors (Dicke states); the remaining sectors
exist here only as multiplicities.

Basis convention used throughout the package: bit ``i`` of a basis index is
site ``i``; bit value 1 is spin up (+1/2) and bit value 0 is spin down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, sqrt

import numpy as np

from .errors import DomainError, ResourceError

MAX_COUNT_OUTER = 62
MAX_DICKE_OUTER = 24


@dataclass(frozen=True, order=True)
class HalfInt:
    """A half-integer stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Build from an int, a Fraction, a float, or a string such as ``"3/2"``."""
        if isinstance(value, HalfInt):
            return value
        frac = Fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise DomainError(f"{value!r} is not a multiple of 1/2")
        return cls(int(doubled))

    @property
    def value(self) -> float:
        return self.twice / 2

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)


def is_valid_pair(j: HalfInt, m: HalfInt) -> bool:
    return j.twice >= 0 and abs(m.twice) <= j.twice and (j.twice - m.twice) % 2 == 0


@dataclass(frozen=True)
class SectorTable:
    """Decomposition of ``n_outer`` spins into total-spin sectors.

    ``entries`` holds ``(j, multiplicity)`` pairs in strictly decreasing ``j``.
    """

    n_outer: int
    entries: tuple[tuple[HalfInt, int], ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def multiplicity(self, j) -> int:
        j = HalfInt.of(j)
        for jj, mult in self.entries:
            if jj == j:
                return mult
        return 0

    def as_pairs(self) -> list[tuple[Fraction, int]]:
        return [(j.as_fraction(), mult) for j, mult in self.entries]


def _check_count_range(n_outer: int) -> None:
    if not isinstance(n_outer, (int, np.integer)) or not 1 <= n_outer <= MAX_COUNT_OUTER:
        raise DomainError(f"n_outer must be an integer in [1, {MAX_COUNT_OUTER}], got {n_outer!r}")


def sectors(n_outer: int) -> SectorTable:
    """Total-spin sectors of ``n_outer`` spin-1/2 particles.

    ``j = (N - 2r)/2`` occurs ``C(N, r) - C(N, r-1)`` times, ``r = 0 .. N//2``.
    """
    _check_count_range(n_outer)
    n = int(n_outer)
    entries = []
    for r in range(n // 2 + 1):
        mult = comb(n, r) - (comb(n, r - 1) if r > 0 else 0)
        entries.append((HalfInt(n - 2 * r), mult))
    return SectorTable(n, tuple(entries))


def state_count(n_outer: int) -> int:
    """Count the spin-star eigenstates sector by sector (``4j + 2`` per copy of ``j``).

    The result is always ``2**(N + 1)``; it is evaluated term by term so that
    the identity can be checked rather than assumed.
    """
    total = 0
    for j, mult in sectors(n_outer):
        # 4j + 2 == 2 * (2j) + 2
        total += mult * (2 * j.twice + 2)
    return total


def lowering_coeff(j, m) -> float:
    """Coefficient ``c`` in ``J_- |j, m> = c |j, m-1>``, i.e. ``sqrt((j+m)(j-m+1))``."""
    j, m = HalfInt.of(j), HalfInt.of(m)
    if not is_valid_pair(j, m):
        raise DomainError(f"invalid angular momentum pair j={j}, m={m}")
    # (j+m)(j-m+1) in doubled units: (2j+2m)(2j-2m+2)/4
    return sqrt((j.twice + m.twice) * (j.twice - m.twice + 2) / 4)


def dicke(n_outer: int, n_ones: int, *, max_outer: int = MAX_DICKE_OUTER) -> np.ndarray:
    """Symmetric state of ``n_outer`` qubits with exactly ``n_ones`` spins up.

    This is ``|j = N/2, m = n_ones - N/2>`` with all amplitudes real and equal.
    """
    if not isinstance(n_outer, (int, np.integer)) or n_outer < 1:
        raise DomainError(f"n_outer must be a positive integer, got {n_outer!r}")
    if not 0 <= n_ones <= n_outer:
        raise DomainError(f"n_ones must lie in [0, {n_outer}], got {n_ones}")
    if n_outer > max_outer:
        raise ResourceError(
            f"dicke state on {n_outer} qubits needs dimension 2**{n_outer}; cap is {max_outer}"
        )
    dim = 1 << n_outer
    weights = popcounts(n_outer)
    psi = np.zeros(dim, dtype=complex)
    psi[weights == n_ones] = 1.0 / sqrt(comb(n_outer, n_ones))
    return psi


def popcounts(n_bits: int) -> np.ndarray:
    """Number of set bits of every index in ``range(2**n_bits)``."""
    idx = np.arange(1 << n_bits, dtype=np.int64)
    counts = np.zeros_like(idx)
    for bit in range(n_bits):
        counts += (idx >> bit) & 1
    return counts
