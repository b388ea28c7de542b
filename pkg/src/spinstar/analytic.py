"""Closed-form spectrum, eigenstates and entanglement of the XX spin star.

Conventions: ``H = J (s0+ J- + s0- J+) + B F_z`` with spin ladder operators
``s+- = (sigma_x +- i sigma_y) / 2``.  Within a sector of outer total spin
``j`` the eigenstates are

    (|0>|j,m> + sign |1>|j,m-1>) / sqrt(2),    m = j, ..., -j+1,

with energy ``sign * J * sqrt((j+m)(j-m+1)) + (m - 1/2) B``, plus the two
one-term edge states ``|1>|j,j>`` (labelled ``m = j+1``) and ``|0>|j,-j>``
(labelled ``m = -j``), whose coupling energy vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .angular import MAX_DICKE_OUTER, HalfInt, dicke, sectors
from .errors import DomainError
from .params import ModelParams

__all__ = [
    "EigenLevel",
    "ModelParams",
    "level_energy",
    "spectrum",
    "expand_energies",
    "ground_levels",
    "eigenstate",
    "ground_states",
    "ground_states_zero_field",
    "alpha_state",
    "beta_state",
    "alpha_field_window",
    "pair_concurrence_analytic",
    "xx_correlation_analytic",
    "oscillation_amplitude",
]


@dataclass(frozen=True)
class EigenLevel:
    j: HalfInt
    m: HalfInt
    sign: int
    energy: float
    degeneracy: int

    @property
    def is_edge(self) -> bool:
        return self.sign == 0

    @property
    def fz(self) -> Fraction:
        """Eigenvalue of the total ``F_z``, i.e. ``m - 1/2``."""
        return self.m.as_fraction() - Fraction(1, 2)


def _coupling_amplitude(j: HalfInt, m: HalfInt) -> float:
    # sqrt((j+m)(j-m+1)); zero at both edge labels
    return sqrt(max(0, (j.twice + m.twice) * (j.twice - m.twice + 2)) / 4)


def _validate_level(j: HalfInt, m: HalfInt, sign: int, n_outer: int) -> None:
    if not 0 <= j.twice <= n_outer or (n_outer - j.twice) % 2:
        raise DomainError(f"j={j} is not a sector of {n_outer} outer spins")
    if not -j.twice <= m.twice <= j.twice + 2 or (j.twice - m.twice) % 2:
        raise DomainError(f"m={m} is not a level label for j={j}")
    edge = m.twice in (j.twice + 2, -j.twice)
    if sign not in (-1, 0, 1):
        raise DomainError(f"sign must be -1, 0 or +1, got {sign!r}")
    if edge != (sign == 0):
        kind = "edge" if edge else "paired"
        raise DomainError(f"sign={sign} is inconsistent with the {kind} level j={j}, m={m}")


def level_energy(j, m, sign: int, params: ModelParams) -> float:
    """Energy of the level ``(j, m, sign)``.

    >>> level_energy("3/2", "1/2", -1, ModelParams(3))
    -2.0
    """
    j, m = HalfInt.of(j), HalfInt.of(m)
    _validate_level(j, m, sign, params.n_outer)
    return sign * params.coupling * _coupling_amplitude(j, m) + (m.twice - 1) / 2 * params.field


def spectrum(params: ModelParams) -> list[EigenLevel]:
    """Every eigenlevel of the star, with sector multiplicities, sorted by energy."""
    levels = []
    for j, mult in sectors(params.n_outer):
        top = HalfInt(j.twice + 2)
        levels.append(EigenLevel(j, top, 0, level_energy(j, top, 0, params), mult))
        for m2 in range(j.twice, -j.twice, -2):
            m = HalfInt(m2)
            for sign in (1, -1):
                levels.append(EigenLevel(j, m, sign, level_energy(j, m, sign, params), mult))
        bottom = HalfInt(-j.twice)
        levels.append(EigenLevel(j, bottom, 0, level_energy(j, bottom, 0, params), mult))
    levels.sort(key=lambda lv: (lv.energy, -lv.j.twice, lv.m.twice, lv.sign))
    return levels


def expand_energies(levels: list[EigenLevel]) -> np.ndarray:
    """Sorted energies with each level repeated ``degeneracy`` times."""
    return np.sort(np.repeat([lv.energy for lv in levels], [lv.degeneracy for lv in levels]))


def ground_levels(params: ModelParams, tol: float | None = None) -> list[EigenLevel]:
    """Levels sharing the minimum energy (to ``tol``)."""
    levels = spectrum(params)
    if tol is None:
        tol = 1e-9 * max(1.0, max(abs(lv.energy) for lv in levels))
    e0 = levels[0].energy
    return [lv for lv in levels if lv.energy <= e0 + tol]


def eigenstate(n_outer: int, m, sign: int, *, max_outer: int = MAX_DICKE_OUTER) -> np.ndarray:
    """Explicit eigenvector of the fully symmetric ``j = N/2`` sector.

    ``m`` is the level label (``-N/2 .. N/2 + 1``); ``sign = 0`` selects an edge
    state.  Amplitudes are real, and the first nonzero one is positive.
    """
    j = HalfInt(n_outer)
    m = HalfInt.of(m)
    _validate_level(j, m, sign, n_outer)
    central_down = np.array([1.0, 0.0])
    central_up = np.array([0.0, 1.0])
    if m.twice == j.twice + 2:
        return np.kron(central_up, dicke(n_outer, n_outer, max_outer=max_outer))
    if m.twice == -j.twice:
        return np.kron(central_down, dicke(n_outer, 0, max_outer=max_outer))
    k = (m.twice + n_outer) // 2  # excitations in the |j, m> factor
    psi = np.kron(central_down, dicke(n_outer, k, max_outer=max_outer))
    psi += sign * np.kron(central_up, dicke(n_outer, k - 1, max_outer=max_outer))
    return psi / sqrt(2)


def ground_states(params: ModelParams, **kw) -> list[np.ndarray] | None:
    """Explicit basis of the ground space, or ``None`` if it reaches below ``j = N/2``."""
    levels = ground_levels(params)
    if any(lv.j.twice != params.n_outer or lv.degeneracy != 1 for lv in levels):
        return None
    return [eigenstate(params.n_outer, lv.m, lv.sign, **kw) for lv in levels]


def ground_states_zero_field(n_outer: int, coupling: float = 1.0, **kw) -> list[np.ndarray]:
    """Zero-field ground state(s): one for odd ``N``, two degenerate ones for even ``N``.

    Only ``coupling > 0`` is accepted.  For negative coupling the ground
    states are the ``sign = +1`` partners, available through ``eigenstate``.
    """
    if coupling == 0:
        raise DomainError("coupling = 0 makes every state degenerate; no ground state to pick")
    if coupling < 0:
        raise DomainError("ground_states_zero_field requires coupling > 0; use eigenstate(n, m, +1)")
    if n_outer < 1:
        raise DomainError(f"n_outer must be >= 1, got {n_outer}")
    if n_outer % 2:
        labels = [Fraction(1, 2)]
    else:
        labels = [Fraction(0), Fraction(1)]
    return [eigenstate(n_outer, m, -1, **kw) for m in labels]


def alpha_state(n_outer: int, **kw) -> np.ndarray:
    """``(|0> W_N - |1>|0...0>) / sqrt(2)`` with ``W_N`` the one-excitation Dicke state."""
    if n_outer < 1:
        raise DomainError(f"n_outer must be >= 1, got {n_outer}")
    return eigenstate(n_outer, Fraction(2 - n_outer, 2), -1, **kw)


def beta_state(n_outer: int, **kw) -> np.ndarray:
    """All spins down, ``|0>|0...0>``."""
    if n_outer < 1:
        raise DomainError(f"n_outer must be >= 1, got {n_outer}")
    return eigenstate(n_outer, Fraction(-n_outer, 2), 0, **kw)


def alpha_field_window(n_outer: int, coupling: float = 1.0) -> tuple[float, float]:
    """Open field interval ``(b_low, b_high)`` in which ``alpha_state`` is the ground state.

    ``b_high = J sqrt(N)`` is where the all-down state takes over;
    ``b_low = J (sqrt(2(N-1)) - sqrt(N))`` is the crossing with the
    ``m = -N/2 + 2`` level.  For ``N = 1`` there is no such level and the
    window starts at zero field.
    """
    if coupling <= 0:
        raise DomainError(f"coupling must be > 0, got {coupling}")
    if n_outer < 1:
        raise DomainError(f"n_outer must be >= 1, got {n_outer}")
    b_high = coupling * sqrt(n_outer)
    if n_outer == 1:
        return 0.0, b_high
    # same as J sqrt(N) (sqrt(2(1 - 1/N)) - 1), with one fewer rounding
    return coupling * (sqrt(2 * (n_outer - 1)) - sqrt(n_outer)), b_high


def _need_pair(n_outer: int) -> None:
    if n_outer < 2:
        raise DomainError(f"need at least two outer spins, got {n_outer}")


def pair_concurrence_analytic(n_outer: int, *, exact: bool = False):
    """Zero-field concurrence between two outer spins.

    ``1/N`` for odd ``N``; ``1/N - 1/(N(N-1))`` for even ``N``, where the
    ground space is the equal mixture of the two degenerate states.
    """
    _need_pair(n_outer)
    n = Fraction(n_outer)
    c = 1 / n if n_outer % 2 else 1 / n - 1 / (n * (n - 1))
    return c if exact else float(c)


def xx_correlation_analytic(n_outer: int, *, exact: bool = False):
    """Zero-field ``<sigma_x sigma_x>`` between two outer spins; tends to 1/2."""
    _need_pair(n_outer)
    n = Fraction(n_outer)
    c = Fraction(1, 2) + 1 / (2 * n)
    if n_outer % 2 == 0:
        c -= 1 / (2 * n * (n - 1))
    return c if exact else float(c)


def oscillation_amplitude(n_outer: int, *, exact: bool = False):
    """Rise in pair concurrence from even ``N`` to ``N + 1``: ``2 / (N (N-1) (N+1))``."""
    if n_outer < 2 or n_outer % 2:
        raise DomainError(f"oscillation amplitude is defined for even N >= 2, got {n_outer}")
    amp = Fraction(2, n_outer * (n_outer - 1) * (n_outer + 1))
    return amp if exact else float(amp)
