"""Brute-force dense reference for the spin star.

Everything here is deliberately naive: operators are assembled as full
``2**n x 2**n`` arrays and diagonalised with a standard Hermitian solver.
The analytic module is the fast path; this one exists to be obviously right.

Site ``i`` is bit ``i`` of the basis index.  For a star with ``N`` outer
spins the outer spins occupy sites ``0 .. N-1`` and the central spin is site
``N`` (the most significant bit).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, ResourceError
from .params import ModelParams

MAX_DENSE_OUTER = 12

# action of each single-site operator on a basis bit: bit -> (new bit, coefficient)
_SINGLE_SITE = {
    "x": ((1, 1.0), (0, 1.0)),
    "y": ((1, -1j), (0, 1j)),
    "z": ((0, -1.0), (1, 1.0)),
    "+": ((1, 1.0), None),
    "-": (None, (0, 1.0)),
}


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def central_site(n_outer: int) -> int:
    return n_outer


def _check_dim(n_sites: int, max_sites: int) -> int:
    if n_sites > max_sites:
        raise ResourceError(
            f"dense operator on {n_sites} sites needs a {1 << n_sites}x{1 << n_sites} "
            f"complex matrix; cap is {max_sites} sites"
        )
    return 1 << n_sites


def pauli_site_operator(axis: str, site: int, n_sites: int, *,
                        max_sites: int = MAX_DENSE_OUTER + 1) -> np.ndarray:
    """Single-site operator on ``site`` with identity elsewhere.

    ``axis`` is one of ``x, y, z`` (Pauli matrices) or ``+, -`` (spin ladder
    operators ``(sigma_x +- i sigma_y) / 2``, so ``s+|0> = |1>``).
    """
    if axis not in _SINGLE_SITE:
        raise DomainError(f"unknown axis {axis!r}; expected one of x, y, z, +, -")
    if n_sites < 1 or not 0 <= site < n_sites:
        raise DomainError(f"site {site} out of range for {n_sites} sites")
    dim = _check_dim(n_sites, max_sites)
    op = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim)
    bits = (idx >> site) & 1
    for old_bit, action in enumerate(_SINGLE_SITE[axis]):
        if action is None:
            continue
        new_bit, coeff = action
        src = idx[bits == old_bit]
        dst = (src & ~(1 << site)) | (new_bit << site)
        op[dst, src] = coeff
    return op


def collective_operator(axis: str, sites: Sequence[int], n_sites: int, **kw) -> np.ndarray:
    """Collective spin component over ``sites``.

    For ``x, y, z`` this is ``J_a = (1/2) sum sigma_a``; for ``+, -`` it is
    ``J_pm = sum s_pm``.
    """
    scale = 1.0 if axis in "+-" else 0.5
    dim = 1 << n_sites
    total = np.zeros((dim, dim), dtype=complex)
    for site in sites:
        total += pauli_site_operator(axis, site, n_sites, **kw)
    return scale * total


def total_spin_squared(sites: Sequence[int], n_sites: int, **kw) -> np.ndarray:
    """``J^2 = J_x^2 + J_y^2 + J_z^2`` over ``sites``."""
    out = None
    for axis in "xyz":
        comp = collective_operator(axis, sites, n_sites, **kw)
        sq = comp @ comp
        out = sq if out is None else out + sq
    return out


def total_fz(n_outer: int, **kw) -> np.ndarray:
    """z-component of the total (central plus outer) spin."""
    return collective_operator("z", range(n_outer + 1), n_outer + 1, **kw)


def build_hamiltonian(params: ModelParams, *, max_outer: int = MAX_DENSE_OUTER) -> np.ndarray:
    """Dense spin-star Hamiltonian.

    ``H = J (s0+ J- + s0- J+) + B (sigma_0z + sum_i sigma_iz) / 2``

    Assembled by acting on basis indices directly rather than through
    Kronecker products.
    """
    n = params.n_outer
    if n > max_outer:
        raise ResourceError(
            f"dense Hamiltonian for N={n} needs dimension {1 << (n + 1)}; cap is N={max_outer}"
        )
    n_sites = n + 1
    dim = 1 << n_sites
    idx = np.arange(dim)
    h = np.zeros((dim, dim), dtype=complex)
    centre = 1 << n
    down_centre = idx[(idx & centre) == 0]
    for site in range(n):
        mask = 1 << site
        # |0>_centre |1>_site  ->  |1>_centre |0>_site  (s0+ si-) and its adjoint
        src = down_centre[(down_centre & mask) != 0]
        dst = (src | centre) & ~mask
        h[dst, src] += params.coupling
        h[src, dst] += params.coupling
    if params.field:
        ups = np.zeros(dim, dtype=np.int64)
        for site in range(n_sites):
            ups += (idx >> site) & 1
        h[idx, idx] += params.field * (ups - n_sites / 2)
    return h


def is_hermitian(op: np.ndarray, atol: float = 1e-12) -> bool:
    scale = max(1.0, float(np.max(np.abs(op)))) if op.size else 1.0
    return bool(np.max(np.abs(op - op.conj().T), initial=0.0) < atol * scale)


def eig_hermitian(op: np.ndarray) -> EigenDecomposition:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {op.shape}")
    if not is_hermitian(op):
        raise DomainError("matrix is not Hermitian")
    values, vectors = np.linalg.eigh(_real_if_possible(op))
    return EigenDecomposition(values, vectors.astype(complex))


def eigvals_hermitian(op: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues only; cheaper than ``eig_hermitian``."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or not is_hermitian(op):
        raise DomainError("expected a square Hermitian matrix")
    return np.linalg.eigvalsh(_real_if_possible(op))


def _real_if_possible(op: np.ndarray) -> np.ndarray:
    # the real symmetric solver is several times faster and gives the same spectrum
    if np.iscomplexobj(op) and not np.any(op.imag):
        return op.real
    return op


def degeneracy_tol(values: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.max(np.abs(values))))


def ground_space(op: np.ndarray, tol: float | None = None,
                 decomposition: EigenDecomposition | None = None) -> list[np.ndarray]:
    """Orthonormal basis of the lowest eigenspace of ``op``.

    Eigenvalues within ``tol`` of the minimum count as degenerate; the default
    tolerance is ``1e-9 * max(1, |E|_max)``.  A non-degenerate ground state is
    phase-fixed so its first nonzero amplitude is real and positive; vectors
    spanning a degenerate space are in no particular basis.
    """
    dec = decomposition if decomposition is not None else eig_hermitian(op)
    if tol is None:
        tol = degeneracy_tol(dec.values)
    count = int(np.sum(dec.values <= dec.values[0] + tol))
    vecs = [dec.vectors[:, k].copy() for k in range(count)]
    if count == 1:
        vecs[0] = canonical_phase(vecs[0])
    return vecs


def canonical_phase(psi: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Rotate the global phase so the first non-negligible amplitude is real and positive."""
    nz = np.flatnonzero(np.abs(psi) > atol)
    if nz.size == 0:
        return psi
    lead = psi[nz[0]]
    return psi * (abs(lead) / lead)


def check_eigenpair(op: np.ndarray, state: np.ndarray, energy: float, tol: float = 1e-10) -> bool:
    """True iff ``||op @ state - energy * state||_2 < tol``."""
    state = np.asarray(state)
    if op.shape[1] != state.shape[0]:
        raise DomainError(f"dimension mismatch: operator {op.shape}, state {state.shape}")
    return bool(np.linalg.norm(op @ state - energy * state) < tol)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of ``[a, b]``."""
    return float(np.linalg.norm(a @ b - b @ a))
