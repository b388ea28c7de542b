"""Reduced states, concurrence, correlations and measurement on the star.

States are plain numpy arrays: a 1-D array is a pure state, a 2-D array a
density matrix, and a list of ``(weight, state)`` pairs a mixture.  Site ``i``
is bit ``i`` of the basis index (the central spin is the top bit).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, MeasurementError, StructureError
from .oracle import canonical_phase, pauli_site_operator

StateLike = Union[np.ndarray, Sequence[tuple[float, np.ndarray]]]

_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))
# entries of a two-qubit density matrix that vanish for an X state (upper triangle)
_OFF_X = ((0, 1), (0, 2), (0, 3), (1, 3), (2, 3))


def n_sites_of(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DomainError(f"dimension {dim} is not a power of two")
    return n


def equal_mixture(states: Sequence[np.ndarray]) -> list[tuple[float, np.ndarray]]:
    w = 1.0 / len(states)
    return [(w, s) for s in states]


def _is_mixture(state) -> bool:
    return isinstance(state, (list, tuple))


def density_matrix(state: StateLike) -> np.ndarray:
    """Density matrix of a pure state, a mixture or (unchanged) a density matrix."""
    if _is_mixture(state):
        _check_weights(state)
        return sum(w * np.outer(s, s.conj()) for w, s in state)
    state = np.asarray(state)
    if state.ndim == 1:
        return np.outer(state, state.conj())
    return state


def _check_weights(mixture) -> None:
    weights = np.array([w for w, _ in mixture], dtype=float)
    if len(weights) == 0 or np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise DomainError("mixture weights must be nonnegative and sum to 1")


def _pure_reduced(psi: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    n = n_sites_of(psi.shape[0])
    axes = [n - 1 - s for s in keep]  # site s is tensor axis n-1-s
    tensor = np.moveaxis(psi.reshape([2] * n), axes, range(len(keep)))
    mat = tensor.reshape(1 << len(keep), -1)
    return mat @ mat.conj().T


def _mixed_reduced(rho: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    n = n_sites_of(rho.shape[0])
    k = len(keep)
    axes = [n - 1 - s for s in keep]
    tensor = rho.reshape([2] * (2 * n))
    tensor = np.moveaxis(tensor, axes + [n + a for a in axes], list(range(2 * k)))
    rest = 1 << (n - k)
    tensor = tensor.reshape(1 << k, 1 << k, rest, rest)
    return np.einsum("abii->ab", tensor)


def reduced_density_matrix(state: StateLike, keep: Sequence[int]) -> np.ndarray:
    """Partial trace onto ``keep``; ``keep[0]`` becomes the most significant qubit."""
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise DomainError(f"repeated site in {keep}")
    if _is_mixture(state):
        _check_weights(state)
        n = n_sites_of(np.asarray(state[0][1]).shape[0])
        _check_sites(keep, n)
        return sum(w * _pure_reduced(np.asarray(s), keep) for w, s in state)
    state = np.asarray(state)
    n = n_sites_of(state.shape[0])
    _check_sites(keep, n)
    if state.ndim == 1:
        return _pure_reduced(state, keep)
    return _mixed_reduced(state, keep)


def _check_sites(sites, n) -> None:
    for s in sites:
        if not 0 <= s < n:
            raise DomainError(f"site {s} out of range for {n} sites")


def pair_rdm(state: StateLike, site_a: int, site_b: int) -> np.ndarray:
    """Two-site reduced density matrix in the basis ``|00>, |01>, |10>, |11>`` (``site_a`` first)."""
    if site_a == site_b:
        raise DomainError(f"sites must differ, got {site_a} twice")
    return reduced_density_matrix(state, [site_a, site_b])


@dataclass(frozen=True)
class XStateRDM:
    """Parameters of a two-qubit X-state.

    ``v, w, x, y`` are the populations of ``|00>, |01>, |10>, |11>`` and ``z``
    is the ``<01|rho|10>`` coherence.
    """

    v: float
    w: float
    x: float
    y: float
    z: complex

    def to_matrix(self) -> np.ndarray:
        rho = np.diag([self.v, self.w, self.x, self.y]).astype(complex)
        rho[1, 2] = self.z
        rho[2, 1] = np.conj(self.z)
        return rho


def as_x_state(rdm: np.ndarray, tol: float = 1e-10) -> XStateRDM:
    """Read ``(v, w, x, y, z)`` off a 4x4 density matrix, checking the X pattern.

    Raises StructureError if any entry outside the pattern reaches ``tol``.
    """
    rdm = np.asarray(rdm)
    if rdm.shape != (4, 4):
        raise DomainError(f"expected a 4x4 density matrix, got shape {rdm.shape}")
    for r, c in _OFF_X:
        if abs(rdm[r, c]) >= tol or abs(rdm[c, r]) >= tol:
            raise StructureError(
                f"entry ({r},{c}) = {rdm[r, c]:.3g} breaks the X-state pattern"
            )
    v, w, x, y = np.real(np.diag(rdm))
    return XStateRDM(float(v), float(w), float(x), float(y), complex(rdm[1, 2]))


def concurrence_x(xs: XStateRDM) -> float:
    """``2 max(|z| - sqrt(v y), 0)``."""
    return 2.0 * max(abs(xs.z) - np.sqrt(max(xs.v * xs.y, 0.0)), 0.0)


def concurrence_general(rdm: np.ndarray, psd_tol: float = 1e-10, rank_tol: float = 1e-13) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    ``C = max(0, l1 - l2 - l3 - l4)`` with ``l_i`` the decreasing square roots
    of the eigenvalues of ``rho @ rho_tilde``, ``rho_tilde`` being
    ``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)``.

    Writing ``rho = A A^dagger`` makes ``l_i`` the singular values of
    ``A^dagger Y A*``, which avoids square roots of noisy near-zero
    eigenvalues.  Eigenvalues of ``rho`` below ``rank_tol`` are treated as zero.
    """
    rdm = np.asarray(rdm)
    if rdm.shape != (4, 4):
        raise DomainError(f"expected a 4x4 density matrix, got shape {rdm.shape}")
    herm = (rdm + rdm.conj().T) / 2
    evals, evecs = np.linalg.eigh(herm)
    if evals[0] < -psd_tol:
        raise DomainError(f"density matrix is not positive semidefinite (min eigenvalue {evals[0]:.3g})")
    evals = np.where(evals > rank_tol, evals, 0.0)
    factor = evecs * np.sqrt(evals)
    lam = np.linalg.svd(factor.conj().T @ _SIGMA_YY @ factor.conj(), compute_uv=False)
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1:].sum()))


def correlation(state: StateLike, axis: str, site_a: int, site_b: int) -> float:
    """``<sigma_a sigma_b>`` along ``axis`` (``x``, ``y`` or ``z``)."""
    if axis not in ("x", "y", "z"):
        raise DomainError(f"axis must be x, y or z, got {axis!r}")
    rho = pair_rdm(state, site_a, site_b)
    op = pauli_site_operator(axis, 1, 2) @ pauli_site_operator(axis, 0, 2)
    return float(np.real(np.trace(rho @ op)))


@dataclass(frozen=True)
class MeasurementResult:
    probability: float
    post_state: np.ndarray


def measure_central(state: np.ndarray, outcome: int, atol: float = 1e-14) -> MeasurementResult:
    """Project the central (most significant) qubit onto ``|outcome>``.

    Returns the outcome probability and the normalised state of the outer spins.
    """
    if outcome not in (0, 1):
        raise DomainError(f"outcome must be 0 or 1, got {outcome!r}")
    state = np.asarray(state)
    if state.ndim != 1:
        raise DomainError("measure_central expects a pure state vector")
    n_sites_of(state.shape[0])
    half = state.shape[0] // 2
    block = state[outcome * half:(outcome + 1) * half]
    prob = float(np.real(np.vdot(block, block)))
    if prob <= atol:
        raise MeasurementError(f"central-spin outcome {outcome} has probability {prob:.3g}")
    return MeasurementResult(prob, canonical_phase(block / np.sqrt(prob)))


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """``|<a|b>|^2`` for a pure ``a``; ``<b|a|b>`` when ``a`` is a density matrix."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape[0] != b.shape[0]:
        raise DomainError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if a.ndim == 1:
        return float(abs(np.vdot(a, b)) ** 2)
    return float(np.real(np.vdot(b, a @ b)))


def subspace_fidelity(basis: Sequence[np.ndarray], b: np.ndarray) -> float:
    """Weight of ``b`` inside the span of an orthonormal ``basis`` (``<b|P|b>``)."""
    return float(sum(abs(np.vdot(v, b)) ** 2 for v in basis))
