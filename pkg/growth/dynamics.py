"""
Time paths of compute, labor and productivity, and the trajectories they induce.

Every trajectory point is an independent static optimum: there is no capital
or adjustment cost, so the economy at time t depends only on the levels at t.
"""
import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from django.db import models
from scipy import optimize

from .allocator import (
    AllocationResult,
    AutomationFlags,
    allocate,
    automation_flags,
    automation_thresholds,
)
from .conf import solver_settings
from .exceptions import GrowthError, InvalidParameter, NonPositiveOutput, NumericOverflow
from .models import AutomationCost, ProductionSpec, ResourceState, TaskClass, TaskPair

logger = logging.getLogger(__name__)


class ComputeKind(models.TextChoices):
    EXPONENTIAL = 'exponential', 'Exponential'
    BOUNDED = 'bounded', 'Bounded saturating'


def _check_finite(name: str, value: float) -> None:
    if isinstance(value, bool) or not math.isfinite(value):
        raise InvalidParameter(f"{name} must be a finite number, got {value!r}.")


def _grown(level: float, rate: float, t: float, name: str) -> float:
    """
    level * exp(rate * t).

    Raises:
        NumericOverflow: If the result leaves the floating-point range.
    """
    if level == 0.0:
        return 0.0
    try:
        value = level * math.exp(rate * t)
    except OverflowError:
        value = math.inf
    if math.isinf(value):
        raise NumericOverflow(f"{name} overflows the floating-point range.", t=t)
    return value


@dataclass(frozen=True)
class ExponentialPath:
    """Q_t = q0 * exp(growth * t)."""
    q0: float
    growth: float

    kind = ComputeKind.EXPONENTIAL

    def __post_init__(self) -> None:
        _check_finite('q0', self.q0)
        _check_finite('growth', self.growth)
        if self.q0 < 0:
            raise InvalidParameter(f"q0 must be nonnegative, got {self.q0!r}.")

    def at(self, t: float) -> float:
        return _grown(self.q0, self.growth, t, 'compute')

    @property
    def is_bounded(self) -> bool:
        return self.growth <= 0 or self.q0 == 0

    @property
    def limit(self) -> float:
        """Supremum of the path."""
        if self.q0 == 0:
            return 0.0
        return math.inf if self.growth > 0 else self.q0

    @property
    def asymptotic_growth(self) -> float:
        return self.growth if self.q0 > 0 else 0.0


@dataclass(frozen=True)
class BoundedSaturatingPath:
    """Q_t = q_max - (q_max - q0) * exp(-rate * t), rising towards q_max."""
    q0: float
    q_max: float
    rate: float

    kind = ComputeKind.BOUNDED

    def __post_init__(self) -> None:
        _check_finite('q0', self.q0)
        _check_finite('q_max', self.q_max)
        _check_finite('rate', self.rate)
        if self.q0 < 0:
            raise InvalidParameter(f"q0 must be nonnegative, got {self.q0!r}.")
        if self.q_max < self.q0 or self.q_max <= 0:
            raise InvalidParameter(f"q_max must be positive and >= q0, got {self.q_max!r}.")
        if self.rate <= 0:
            raise InvalidParameter(f"rate must be positive, got {self.rate!r}.")

    def at(self, t: float) -> float:
        return self.q_max - (self.q_max - self.q0) * math.exp(-self.rate * t)

    @property
    def is_bounded(self) -> bool:
        return True

    @property
    def limit(self) -> float:
        return self.q_max

    @property
    def asymptotic_growth(self) -> float:
        return 0.0


ComputePath = Union[ExponentialPath, BoundedSaturatingPath]


def compute_at(path: ComputePath, t: float) -> float:
    """
    Total compute (FLOP/yr) at time ``t`` in years.

    Raises:
        InvalidParameter: If ``t`` is negative or not finite.
        NumericOverflow: If compute at ``t`` exceeds the floating-point range.
    """
    if isinstance(t, bool) or not math.isfinite(t) or t < 0:
        raise InvalidParameter(f"Time must be a finite nonnegative number of years, got {t!r}.")
    return path.at(t)


@dataclass(frozen=True)
class Scenario:
    """
    An economy over time.

    ``production`` carries the productivity levels at t = 0; ``g_a`` and
    ``g_al`` are their continuous growth rates, ``g_l`` that of labor.
    """
    tasks: TaskPair
    production: ProductionSpec
    labor_supply: float
    compute_path: ComputePath
    g_a: float = 0.0
    g_al: float = 0.0
    g_l: float = 0.0

    def __post_init__(self) -> None:
        _check_finite('labor_supply', self.labor_supply)
        if self.labor_supply <= 0:
            raise InvalidParameter(f"labor_supply must be positive, got {self.labor_supply!r}.")
        for name in ('g_a', 'g_al', 'g_l'):
            _check_finite(name, getattr(self, name))

    def labor_at(self, t: float) -> float:
        return _grown(self.labor_supply, self.g_l, t, 'labor')

    def production_at(self, t: float) -> ProductionSpec:
        return self.production.with_levels(
            hicks_neutral=_grown(self.production.hicks_neutral, self.g_a, t, 'A'),
            labor_augmenting=_grown(self.production.labor_augmenting, self.g_al, t, 'A^L'),
        )

    def resources_at(self, t: float) -> ResourceState:
        return ResourceState(compute=compute_at(self.compute_path, t), labor=self.labor_at(t))

    def with_costs(self, alpha_c: AutomationCost, alpha_p: AutomationCost) -> 'Scenario':
        tasks = TaskPair(
            cognitive=replace(self.tasks.cognitive, cost=alpha_c),
            physical=replace(self.tasks.physical, cost=alpha_p),
        )
        return replace(self, tasks=tasks)


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    q: float
    labor: float
    result: AllocationResult
    flags: AutomationFlags


def evaluate_at(scenario: Scenario, t: float) -> TrajectoryPoint:
    """
    Solve the economy at one instant.

    Raises:
        GrowthError: Any allocator error, annotated with ``t``.
    """
    try:
        resources = scenario.resources_at(t)
        spec = scenario.production_at(t)
        result = allocate(resources, scenario.tasks, spec)
        flags = automation_flags(result, scenario.tasks, resources, spec)
    except GrowthError as e:
        raise e.at_time(t)
    return TrajectoryPoint(t=t, q=resources.compute, labor=resources.labor, result=result, flags=flags)


def check_time_grid(t_grid: Sequence[float]) -> List[float]:
    """
    The grid as floats.

    Raises:
        InvalidParameter: If the grid is empty, unsorted or has negative times.
    """
    times = [float(t) for t in t_grid]
    if not times:
        raise InvalidParameter("The time grid is empty.")
    if any(not math.isfinite(t) or t < 0 for t in times):
        raise InvalidParameter("Times must be finite and nonnegative.")
    if any(later < earlier for earlier, later in zip(times, times[1:])):
        raise InvalidParameter("Times must be in ascending order.")
    return times


def simulate(scenario: Scenario, t_grid: Sequence[float]) -> List[TrajectoryPoint]:
    """
    Evaluate the scenario on an ascending grid of times (years).

    Raises:
        InvalidParameter: If the grid is empty, unsorted or has negative times.
        GrowthError: Allocator errors, annotated with the offending ``t``.
    """
    times = check_time_grid(t_grid)
    logger.debug(f"Simulating {len(times)} points on [{times[0]!r}, {times[-1]!r}]")
    return [evaluate_at(scenario, t) for t in times]


def time_grid(t_start: float, t_end: float, t_step: float) -> List[float]:
    """
    Uniform grid t_start, t_start + h, ... up to t_end inclusive.

    Points are computed as t_start + i * h so that the spacing carries no
    accumulated rounding.
    """
    if not t_step > 0:
        raise InvalidParameter(f"t_step must be positive, got {t_step!r}.")
    if t_end < t_start:
        raise InvalidParameter(f"t_end ({t_end!r}) precedes t_start ({t_start!r}).")
    count = int(math.floor((t_end - t_start) / t_step + 1e-9)) + 1
    return (t_start + np.arange(count) * t_step).tolist()


def _threshold_now(scenario: Scenario, task_class: TaskClass, t: float) -> float:
    spec = scenario.production_at(t)
    return automation_thresholds(scenario.tasks, spec, scenario.labor_at(t)).for_class(task_class)


def _bounded_crossing(path: BoundedSaturatingPath, threshold: float, drift: float) -> Optional[float]:
    """
    First t at which Q_t reaches threshold * exp(drift * t), given Q_0 below it.

    log Q_t - drift * t is increasing when drift <= 0 and single-peaked when
    drift > 0, so the bracket is known without searching.
    """
    span = path.q_max - path.q0
    if drift == 0.0:
        if path.q_max <= threshold:
            return None
        return math.log(span / (path.q_max - threshold)) / path.rate

    log_threshold = math.log(threshold)

    def log_gap(t: float) -> float:
        q = path.at(t)
        return (math.log(q) if q > 0 else -math.inf) - log_threshold - drift * t

    if drift < 0:
        # By then Q_t >= q_max / 2 and the threshold is at most q_max / 2.
        half_way = math.log(2.0) / path.rate
        upper = half_way + max(0.0, math.log(2.0 * threshold / path.q_max) / -drift)
    else:
        if span == 0.0:
            return None
        # Stationary point of log Q_t - drift * t: rate * (q_max - Q_t) = drift * Q_t.
        upper = math.log(span * (path.rate + drift) / (drift * path.q_max)) / path.rate
        if upper <= 0.0 or log_gap(upper) < 0.0:
            return None

    cfg = solver_settings()
    return float(optimize.bisect(log_gap, 0.0, upper, xtol=cfg.bisection_xtol, maxiter=cfg.bisection_maxiter))


def automation_time(scenario: Scenario, task_class: TaskClass) -> Optional[float]:
    """
    First time total compute reaches the automation threshold of a class.

    Thresholds scale with effective labor A^L_t * L_t. Exponential paths and
    bounded paths under constant effective labor are solved in closed form;
    otherwise the crossing is bisected on a bracket derived from the shape
    of the path.

    Returns:
        Years from t = 0, 0.0 if the threshold is already met, or None when
        the path never reaches it.
    """
    if scenario.tasks.cost(task_class).is_infinite:
        return None
    threshold = _threshold_now(scenario, task_class, 0.0)
    if math.isinf(threshold):
        return None

    path = scenario.compute_path
    if path.q0 >= threshold:
        return 0.0
    drift = scenario.g_l + scenario.g_al

    if isinstance(path, ExponentialPath):
        if path.q0 == 0 or path.growth <= drift:
            return None
        return math.log(threshold / path.q0) / (path.growth - drift)

    crossing = _bounded_crossing(path, threshold, drift)
    if crossing is None:
        logger.debug(f"{task_class.value} threshold {threshold!r} is above what Q_max={path.q_max!r} reaches")
    return crossing


def cognitive_automation_time(scenario: Scenario) -> Optional[float]:
    """Years until cognitive work is automated (None if never)."""
    return automation_time(scenario, TaskClass.COGNITIVE)


def physical_automation_time(scenario: Scenario) -> Optional[float]:
    """Years until compute starts to perform physical work (None if never)."""
    return automation_time(scenario, TaskClass.PHYSICAL)


def persistence_check(alpha_p: AutomationCost, labor_flow: float,
                      q_max: Union[int, float]) -> bool:
    """
    Whether a physical task keeps human labor when compute saturates at q_max.

    True iff the cost is infinite or alpha_p * labor_flow > q_max. The product
    is compared exactly, so a bound one FLOP/yr below it still counts.

    Raises:
        InvalidParameter: If ``labor_flow`` or ``q_max`` is not positive.
    """
    if not labor_flow > 0 or not math.isfinite(labor_flow):
        raise InvalidParameter(f"labor_flow must be positive, got {labor_flow!r}.")
    if not q_max > 0:
        raise InvalidParameter(f"q_max must be positive, got {q_max!r}.")
    if alpha_p.is_infinite or math.isinf(q_max):
        return alpha_p.is_infinite
    return Fraction(alpha_p.flops) * Fraction(labor_flow) > Fraction(q_max)


def growth_decomposition(beta: float, g_q: float, g_l: float, g_al: float,
                         g_a: float = 0.0) -> float:
    """
    Output growth once cognitive work is automated and physical work is not.

    g_Y = g_A + (1 - beta) g_Q + beta (g_L + g_AL)
    """
    if not 0.0 < beta < 1.0:
        raise InvalidParameter(f"beta must lie in (0, 1), got {beta!r}.")
    return g_a + (1.0 - beta) * g_q + beta * g_l + beta * g_al


def numeric_growth_rate(trajectory: Sequence[TrajectoryPoint]) -> List[Tuple[float, float]]:
    """
    Centered log-difference growth rate of output at interior grid points.

    Raises:
        InvalidParameter: If there are fewer than 3 points or the spacing is not uniform.
        NonPositiveOutput: If any output is zero.
    """
    if len(trajectory) < 3:
        raise InvalidParameter("At least 3 trajectory points are needed for a centered difference.")
    t = np.array([point.t for point in trajectory], dtype=np.float64)
    y = np.array([point.result.output for point in trajectory], dtype=np.float64)
    if np.any(y <= 0):
        bad = float(t[np.argmax(y <= 0)])
        raise NonPositiveOutput(f"Output is not positive at t={bad!r}.", t=bad)
    steps = np.diff(t)
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-6, atol=1e-12):
        raise InvalidParameter("Trajectory times must be uniformly spaced and increasing.")
    log_y = np.log(y)
    rates = (log_y[2:] - log_y[:-2]) / (t[2:] - t[:-2])
    return list(zip(t[1:-1].tolist(), rates.tolist()))
