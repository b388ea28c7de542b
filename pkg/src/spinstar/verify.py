"""Oracle-equivalence checks run by ``spinstar verify``.

Each check compares the closed-form results with the dense reference for
every N up to a cap and reports the worst deviation it saw.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import sqrt
import numpy as np

from . import analytic, oracle, qinfo
from .angular import sectors, state_count
from .params import ModelParams


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_error: float
    detail: str = ""


class _Cache:
    """Dense ground spaces keyed by ``(N, J, B)`` so checks can share them."""

    def __init__(self):
        self._store = {}

    def decomposition(self, n, coupling=1.0, field=0.0):
        key = (n, coupling, field)
        if key not in self._store:
            h = oracle.build_hamiltonian(ModelParams(n, coupling, field))
            self._store[key] = (h, oracle.eig_hermitian(h))
        return self._store[key]

    def ground(self, n, coupling=1.0, field=0.0):
        h, dec = self.decomposition(n, coupling, field)
        return oracle.ground_space(h, decomposition=dec)


def _result(name, errors, tol, detail=""):
    worst = max(errors) if errors else 0.0
    return CheckResult(name, bool(worst < tol), float(worst), detail)


def check_counting(cap):
    errs = []
    for n in range(1, 31):
        table = sectors(n)
        errs.append(float(state_count(n) != 2 ** (n + 1)))
        errs.append(float(sum(m * (j.twice + 1) for j, m in table) != 2 ** n))
    return _result("state_count", errs, 0.5, "N=1..30, exact integers")


def check_spectrum(cap, cache):
    errs = []
    for n in range(1, cap + 1):
        for coupling, field in ((1.0, 0.0), (1.0, 0.5), (1.0, 2.0), (1.0, 0.9 * sqrt(n)), (-1.0, 0.0)):
            _, dec = cache.decomposition(n, coupling, field)
            ana = analytic.expand_energies(analytic.spectrum(ModelParams(n, coupling, field)))
            errs.append(float(np.max(np.abs(dec.values - ana))))
    return _result("spectrum_equivalence", errs, 1e-9)


def check_ground_parity(cap, cache):
    errs = [float(len(cache.ground(n)) != (2 if n % 2 == 0 else 1)) for n in range(2, cap + 1)]
    return _result("ground_degeneracy_parity", errs, 0.5)


def _outer_mixture(cache, n, coupling=1.0):
    return qinfo.equal_mixture(cache.ground(n, coupling))


def check_concurrence(cap, cache):
    errs, shortcut = [], []
    for n in range(2, cap + 1):
        rho = qinfo.pair_rdm(_outer_mixture(cache, n), 0, 1)
        c_x = qinfo.concurrence_x(qinfo.as_x_state(rho))
        shortcut.append(abs(c_x - qinfo.concurrence_general(rho)))
        errs.append(abs(c_x - analytic.pair_concurrence_analytic(n)))
    return [_result("pair_concurrence", errs, 1e-9),
            _result("concurrence_shortcut_vs_wootters", shortcut, 1e-10)]


def check_oscillation(cap, cache):
    errs = []
    for n in range(2, cap, 2):
        lo = qinfo.concurrence_x(qinfo.as_x_state(qinfo.pair_rdm(_outer_mixture(cache, n), 0, 1)))
        hi = qinfo.concurrence_x(qinfo.as_x_state(qinfo.pair_rdm(_outer_mixture(cache, n + 1), 0, 1)))
        errs.append(abs((hi - lo) - analytic.oscillation_amplitude(n)))
    return _result("oscillation_amplitude", errs, 1e-9)


def check_correlations(cap, cache):
    xx_err, yy_err = [], []
    for n in range(2, cap + 1):
        mix = _outer_mixture(cache, n)
        xx = qinfo.correlation(mix, "x", 0, 1)
        xx_err.append(abs(xx - analytic.xx_correlation_analytic(n)))
        yy_err.append(abs(qinfo.correlation(mix, "y", 0, 1) - xx))
    return [_result("xx_correlation", xx_err, 1e-9), _result("yy_equals_xx", yy_err, 1e-10)]


def check_window(cap, cache):
    errs = []
    for n in range(2, min(cap, 8) + 1):
        alpha = analytic.alpha_state(n)
        b_low, b_high = analytic.alpha_field_window(n)
        inside = cache.ground(n, 1.0, (b_low + b_high) / 2)
        errs.append(float(len(inside) != 1) + abs(1 - qinfo.subspace_fidelity(inside, alpha)))
        probes = [1.01 * b_high] + ([0.99 * b_low] if b_low > 0 else [])
        for field in probes:
            f = qinfo.subspace_fidelity(cache.ground(n, 1.0, field), alpha)
            errs.append(float(f > 1 - 1e-6))
    return _result("alpha_field_window", errs, 1e-9)


def check_alpha_protocol(cap):
    errs = []
    for n in range(2, cap + 1):
        alpha = analytic.alpha_state(n)
        centre = oracle.central_site(n)
        for site in range(n):
            rho = qinfo.pair_rdm(alpha, centre, site)
            errs.append(abs(qinfo.concurrence_x(qinfo.as_x_state(rho)) - 1 / sqrt(n)))
            errs.append(abs(qinfo.concurrence_general(rho) - 1 / sqrt(n)))
        w = qinfo.measure_central(alpha, 0).post_state
        for a, b in combinations(range(n), 2):
            rho = qinfo.pair_rdm(w, a, b)
            errs.append(abs(qinfo.concurrence_x(qinfo.as_x_state(rho)) - 2 / n))
            errs.append(abs(qinfo.concurrence_general(rho) - 2 / n))
    return _result("alpha_splitting_and_sharing", errs, 1e-10)


def check_symmetry(cap, cache):
    comm, perm, sign = [], [], []
    for n in range(1, min(cap, 8) + 1):
        h = oracle.build_hamiltonian(ModelParams(n, 1.0, 0.5))
        comm.append(oracle.commutator_norm(h, oracle.total_fz(n)))
        comm.append(oracle.commutator_norm(h, oracle.total_spin_squared(range(n), n + 1)))
        if n < 2:
            continue
        mix = _outer_mixture(cache, n)
        ref = qinfo.pair_rdm(mix, 0, 1)
        for a, b in combinations(range(n), 2):
            perm.append(float(np.max(np.abs(qinfo.pair_rdm(mix, a, b) - ref))))
        flipped = _outer_mixture(cache, n, -1.0)
        rho_p, rho_m = ref, qinfo.pair_rdm(flipped, 0, 1)
        sign.append(abs(qinfo.concurrence_general(rho_p) - qinfo.concurrence_general(rho_m)))
        for axis in "xyz":
            sign.append(abs(qinfo.correlation(mix, axis, 0, 1) - qinfo.correlation(flipped, axis, 0, 1)))
    return [_result("commutators", comm, 1e-10), _result("outer_pair_permutation", perm, 1e-10),
            _result("coupling_sign_invariance", sign, 1e-10)]


def run_all(cap: int = 8) -> list[CheckResult]:
    """Run every check for N up to ``cap`` (dense problems only)."""
    cache = _Cache()
    steps = [
        lambda: check_counting(cap),
        lambda: check_spectrum(cap, cache),
        lambda: check_ground_parity(cap, cache),
        lambda: check_concurrence(cap, cache),
        lambda: check_oscillation(cap, cache),
        lambda: check_correlations(cap, cache),
        lambda: check_window(cap, cache),
        lambda: check_alpha_protocol(cap),
        lambda: check_symmetry(cap, cache),
    ]
    results: list[CheckResult] = []
    for step in steps:
        out = step()
        results.extend(out if isinstance(out, list) else [out])
    return results
