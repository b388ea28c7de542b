from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class ModelParams:
    """Spin-star parameters: ``n_outer`` outer spins, XX coupling, +Z field.

    Energies are in the same units as ``coupling`` and ``field``.
    """

    n_outer: int
    coupling: float = 1.0
    field: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n_outer, int) or isinstance(self.n_outer, bool) or self.n_outer < 1:
            raise DomainError(f"n_outer must be a positive integer, got {self.n_outer!r}")
        if self.field < 0:
            raise DomainError(f"field must be >= 0 (+Z direction), got {self.field}")

    @property
    def n_sites(self) -> int:
        return self.n_outer + 1
