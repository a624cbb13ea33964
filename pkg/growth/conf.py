"""Solver settings read from the Django configuration."""
from dataclasses import dataclass, fields
from typing import Any, Dict

from django.conf import settings


@dataclass(frozen=True)
class SolverSettings:
    """Numerical tolerances shared by the allocator and the dynamics."""
    bisection_xtol: float = 1e-12
    bisection_maxiter: int = 1100
    automation_epsilon: float = 1e-9
    kkt_tolerance: float = 1e-9
    oracle_grid_points: int = 101


def solver_settings() -> SolverSettings:
    """
    Build the solver settings from ``settings.GROWTH_SOLVER``.

    Unknown keys are ignored; defaults apply when Django is not configured.
    """
    overrides: Dict[str, Any] = {}
    if settings.configured:
        overrides = getattr(settings, 'GROWTH_SOLVER', {}) or {}
    known = {f.name for f in fields(SolverSettings)}
    values = {key.lower(): value for key, value in overrides.items() if key.lower() in known}
    return SolverSettings(**values)
