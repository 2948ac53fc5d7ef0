"""Result container shared by the phase computations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PhaseResult:
    """A computed phase in radians with its quadrature error budget.

    ``breakdown`` carries the named per-term contributions (all in rad
    unless the key says otherwise) so that composite phases stay auditable.
    """

    value: float
    error_estimate: float
    evaluations: int = 0
    converged: bool = True
    breakdown: dict[str, float] = field(default_factory=dict)
