"""
Efficient static allocation of labor and compute across the two aggregates.

The feasible set maps onto a concave production-possibility frontier with a
single kink: all compute in the class where compute is relatively cheapest
(the primary class) and all labor in the other one. Moving away from the
kink either shifts labor into the primary class or spills compute into the
secondary class; at most one of the two splits is interior at an optimum.
The solver evaluates the marginal rate of substitution at the kink, picks
the side, and bisects the one-dimensional first-order condition.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import optimize

from .conf import SolverSettings, solver_settings
from .exceptions import DegenerateEconomy, InfeasibleSpec, InvalidParameter
from .models import (
    Allocation,
    ProductionFamily,
    ProductionSpec,
    ResourceState,
    TaskClass,
    TaskPair,
    aggregate_output,
    aggregates,
    marginal_products,
    marginal_rate,
)

logger = logging.getLogger(__name__)

# Marginal rates within this relative distance of a split boundary are solved
# at the kink, so a compute level that rounds onto a threshold counts as automated.
KINK_RTOL = 1e-12

# Absolute tolerance handed to scipy, which rejects zero; the relative one governs.
BISECTION_ABS_FLOOR = 1e-300


@dataclass(frozen=True)
class AllocationResult:
    """
    An allocation together with the output and competitive prices it implies.

    Attributes:
        allocation: Labor and compute split across the two aggregates.
        output: Output per year.
        wage: Output per human-hour.
        rent: Output per FLOP (a shadow price when no compute is employed).
        labor_share: wage * L / Y, in [0, 1].
        compute_share: rent * Q / Y, in [0, 1].
        x_cognitive: Effective cognitive quantity.
        x_physical: Effective physical quantity.
    """
    allocation: Allocation
    output: float
    wage: float
    rent: float
    labor_share: float
    compute_share: float
    x_cognitive: float
    x_physical: float


@dataclass(frozen=True)
class AutomationThresholds:
    """Compute levels (FLOP/yr) at which each class counts as automated."""
    cognitive: float
    physical: float

    def for_class(self, task_class: TaskClass) -> float:
        if task_class is TaskClass.COGNITIVE:
            return self.cognitive
        return self.physical


@dataclass(frozen=True)
class AutomationFlags:
    """
    Automation status read two ways.

    ``cognitive``/``physical`` come from the allocation itself; the
    ``threshold_*`` pair compares total compute with the closed-form
    thresholds. The two sets coincide away from exact boundaries.
    """
    cognitive: bool
    physical: bool
    threshold_cognitive: bool
    threshold_physical: bool

    @property
    def agree(self) -> bool:
        return (self.cognitive, self.physical) == (self.threshold_cognitive, self.threshold_physical)

    def for_class(self, task_class: TaskClass) -> bool:
        if task_class is TaskClass.COGNITIVE:
            return self.cognitive
        return self.physical


def _check_solvable(resources: ResourceState, tasks: TaskPair, spec: ProductionSpec) -> None:
    """
    Reject economies whose output is identically zero.

    Raises:
        DegenerateEconomy: If there is neither labor nor compute.
        InfeasibleSpec: If an aggregate with infinite cost is essential and
            there is no labor to perform it.
    """
    if resources.labor == 0 and resources.compute == 0:
        raise DegenerateEconomy("The economy has no labor and no compute.")
    if resources.labor > 0:
        return
    unautomatable = [task.id for task in tasks if task.cost.is_infinite]
    if not unautomatable:
        return
    substitutes = spec.family == ProductionFamily.CES and spec.curvature > 0
    if len(unautomatable) == 2 or not substitutes:
        raise InfeasibleSpec(
            f"Task(s) {', '.join(unautomatable)} cannot be automated and there is no labor; "
            "output is identically zero."
        )


def _bisect(gap: Callable[[float, float], float], cfg: SolverSettings) -> Tuple[float, float]:
    """
    Root of a monotone gap on [0, 1] as (share, 1 - share).

    ``gap`` takes the share and its complement. The half holding the root is
    bisected on whichever of the two is at most 0.5, with ``bisection_xtol``
    as a relative tolerance. Without a sign change the nearer end wins.
    """
    at_zero, at_one = gap(0.0, 1.0), gap(1.0, 0.0)
    if at_zero == 0.0:
        return 0.0, 1.0
    if at_one == 0.0:
        return 1.0, 0.0
    if (at_zero > 0) == (at_one > 0):
        # Only happens when the kink test and the gap round differently at a threshold.
        return (0.0, 1.0) if abs(at_zero) <= abs(at_one) else (1.0, 0.0)

    at_half = gap(0.5, 0.5)
    if at_half == 0.0:
        return 0.5, 0.5
    if (at_zero > 0) != (at_half > 0):
        share = _bisect_half(lambda s: gap(s, 1.0 - s), cfg)
        return share, 1.0 - share
    complement = _bisect_half(lambda c: gap(1.0 - c, c), cfg)
    return 1.0 - complement, complement


def _bisect_half(gap: Callable[[float], float], cfg: SolverSettings) -> float:
    root = optimize.bisect(gap, 0.0, 0.5, xtol=BISECTION_ABS_FLOOR, rtol=cfg.bisection_xtol,
                           maxiter=cfg.bisection_maxiter)
    return float(root)


def _solve_labor_split(spec: ProductionSpec, primary: TaskClass, automated: float,
                       effective_labor: float, cfg: SolverSettings) -> Tuple[float, float]:
    """
    (share, 1 - share) of labor moved into the primary class so that its marginal
    product matches the secondary class's (compute stays in the primary).
    """
    scale = automated + effective_labor
    base, pool = automated / scale, effective_labor / scale
    w_k, w_o = spec.weight(primary), spec.weight(primary.other)
    power = 1.0 - spec.curvature

    def gap(share: float, complement: float) -> float:
        x_k = base + share * pool
        x_o = complement * pool
        return w_k * x_o ** power - w_o * x_k ** power

    return _bisect(gap, cfg)


def _solve_compute_split(spec: ProductionSpec, primary: TaskClass, automated: float,
                         effective_labor: float, cost_ratio: float,
                         cfg: SolverSettings) -> Tuple[float, float]:
    """
    (share, 1 - share) of compute spilled into the secondary class so that compute earns
    the same marginal value per FLOP in both classes (labor stays secondary).
    """
    scale = automated + effective_labor
    base, pool = automated / scale, effective_labor / scale
    w_k, w_o = spec.weight(primary), spec.weight(primary.other)
    power = 1.0 - spec.curvature

    def gap(share: float, complement: float) -> float:
        x_k = complement * base
        x_o = pool + share * base * cost_ratio
        return w_k * x_o ** power - w_o * cost_ratio * x_k ** power

    return _bisect(gap, cfg)


def prices(allocation: Allocation, tasks: TaskPair, spec: ProductionSpec) -> Tuple[float, float]:
    """
    Competitive wage and compute rent at an allocation.

    The wage is A^L times the best marginal product labor can earn; the rent
    is the best marginal product per FLOP among tasks compute can perform.
    At an optimum these coincide with the values in every employed use.

    Returns:
        (wage, rent)

    Raises:
        UndefinedMarginal: If a marginal product diverges at the allocation.
    """
    x_c, x_p = aggregates(allocation, tasks, spec.labor_augmenting)
    mp = dict(zip(TaskClass, marginal_products(x_c, x_p, spec)))
    wage = spec.labor_augmenting * max(mp.values())
    rent = max(
        (mp[task.task_class] / task.cost.flops for task in tasks if not task.cost.is_infinite),
        default=0.0,
    )
    return wage, rent


def _clip_share(value: float) -> float:
    return min(1.0, max(0.0, value))


def _result(allocation: Allocation, resources: ResourceState, tasks: TaskPair,
            spec: ProductionSpec) -> AllocationResult:
    x_c, x_p = aggregates(allocation, tasks, spec.labor_augmenting)
    output = aggregate_output(x_c, x_p, spec)
    wage, rent = prices(allocation, tasks, spec)
    return AllocationResult(
        allocation=allocation,
        output=output,
        wage=wage,
        rent=rent,
        labor_share=_clip_share(wage * resources.labor / output),
        compute_share=_clip_share(rent * resources.compute / output),
        x_cognitive=x_c,
        x_physical=x_p,
    )


def allocate(resources: ResourceState, tasks: TaskPair, spec: ProductionSpec) -> AllocationResult:
    """
    Output-maximizing allocation of labor and compute.

    Args:
        resources: Total compute and labor available.
        tasks: The cognitive and physical tasks with their automation costs.
        spec: Production technology.

    Returns:
        The optimal allocation with its output, prices and factor shares.

    Raises:
        DegenerateEconomy: If labor and compute are both zero.
        InfeasibleSpec: If output is zero for every feasible allocation.
    """
    _check_solvable(resources, tasks, spec)
    cfg = solver_settings()
    primary, secondary = tasks.compute_favoured()
    alpha_k, alpha_o = tasks.cost(primary), tasks.cost(secondary)

    labor = resources.labor
    # With both costs infinite, compute has no use and stays idle.
    compute = 0.0 if alpha_k.is_infinite else resources.compute
    automated = alpha_k.compute_equivalent(compute)
    effective_labor = spec.labor_augmenting * labor

    labor_to: Dict[TaskClass, float] = {primary: 0.0, secondary: labor}
    compute_to: Dict[TaskClass, float] = {primary: compute, secondary: 0.0}

    rate = marginal_rate(spec, primary, automated, effective_labor)
    if rate > 1.0 + KINK_RTOL:
        share, complement = _solve_labor_split(spec, primary, automated, effective_labor, cfg)
        labor_to = {primary: share * labor, secondary: complement * labor}
        branch = 'labor-split'
    elif not alpha_o.is_infinite and compute > 0 and rate < (alpha_k.flops / alpha_o.flops) * (1.0 - KINK_RTOL):
        cost_ratio = alpha_k.flops / alpha_o.flops
        share, complement = _solve_compute_split(spec, primary, automated, effective_labor, cost_ratio, cfg)
        compute_to = {primary: complement * compute, secondary: share * compute}
        branch = 'compute-split'
    else:
        branch = 'kink'

    logger.debug(
        f"allocate: Q={resources.compute!r} L={labor!r} primary={primary.value} "
        f"branch={branch} mrs={rate!r}"
    )
    result = _result(Allocation.by_class(labor_to, compute_to), resources, tasks, spec)
    if logger.isEnabledFor(logging.DEBUG):
        residual = kkt_residual(result, tasks, spec)
        if residual > cfg.kkt_tolerance:
            logger.warning(f"allocate: KKT residual {residual!r} exceeds {cfg.kkt_tolerance!r} ({branch})")
    return result


def brute_force_allocate(resources: ResourceState, tasks: TaskPair, spec: ProductionSpec,
                         grid_points: Optional[int] = None) -> AllocationResult:
    """
    Grid-search oracle for ``allocate``.

    Searches a grid over (physical share of labor, physical share of compute),
    then searches a second grid spanning the cells around the best point.

    Args:
        grid_points: Points per axis, at least 11. Defaults to the
            ``ORACLE_GRID_POINTS`` solver setting.

    Raises:
        InvalidParameter: If ``grid_points`` is below 11.
        DegenerateEconomy, InfeasibleSpec: As for ``allocate``.
    """
    cfg = solver_settings()
    points = cfg.oracle_grid_points if grid_points is None else grid_points
    if points < 11:
        raise InvalidParameter(f"grid_points must be at least 11, got {points!r}.")
    _check_solvable(resources, tasks, spec)

    alpha_c, alpha_p = tasks.cognitive.cost, tasks.physical.cost
    labor = resources.labor
    compute = 0.0 if (alpha_c.is_infinite and alpha_p.is_infinite) else resources.compute
    a = spec.labor_augmenting
    per_flop_c = alpha_c.compute_equivalent(1.0)
    per_flop_p = alpha_p.compute_equivalent(1.0)

    if alpha_p.is_infinite:
        v_bounds = (0.0, 0.0)
    elif alpha_c.is_infinite:
        v_bounds = (1.0, 1.0)
    else:
        v_bounds = (0.0, 1.0)

    def axis(lo: float, hi: float) -> np.ndarray:
        if hi <= lo:
            return np.array([lo])
        return np.linspace(lo, hi, points)

    def search(u_bounds: Tuple[float, float], v_bounds: Tuple[float, float]) -> Tuple[float, float]:
        u_axis, v_axis = axis(*u_bounds), axis(*v_bounds)
        u, v = np.meshgrid(u_axis, v_axis, indexing='ij')
        x_c = a * (1.0 - u) * labor + (1.0 - v) * compute * per_flop_c
        x_p = a * u * labor + v * compute * per_flop_p
        y = aggregate_output(x_c, x_p, spec)
        i, j = np.unravel_index(int(np.argmax(y)), y.shape)
        return float(u_axis[i]), float(v_axis[j])

    u_best, v_best = search((0.0, 1.0), v_bounds)
    step = 1.0 / (points - 1)
    v_window = v_bounds
    if v_bounds[1] > v_bounds[0]:
        v_window = (max(0.0, v_best - step), min(1.0, v_best + step))
    u_best, v_best = search((max(0.0, u_best - step), min(1.0, u_best + step)), v_window)

    allocation = Allocation(
        labor_cognitive=(1.0 - u_best) * labor,
        labor_physical=u_best * labor,
        compute_cognitive=(1.0 - v_best) * compute,
        compute_physical=v_best * compute,
    )
    return _result(allocation, resources, tasks, spec)


def automation_thresholds(tasks: TaskPair, spec: ProductionSpec, labor: float) -> AutomationThresholds:
    """
    Total compute at which each class is automated.

    Labor leaves the compute-favoured class k once
    Q >= alpha_k * A^L * L * (w_k / w_o) ** sigma, and compute starts to
    displace labor in the other class o once Q exceeds that level times
    (alpha_o / alpha_k) ** sigma, with sigma = 1 / (1 - rho). Under
    Cobb-Douglas with cognitive favoured these read
    ((1 - beta) / beta) * alpha^c * L and ((1 - beta) / beta) * alpha^p * L.
    Infinite costs give infinite thresholds.
    """
    primary, secondary = tasks.compute_favoured()
    alpha_k, alpha_o = tasks.cost(primary), tasks.cost(secondary)
    levels: Dict[TaskClass, float] = {primary: math.inf, secondary: math.inf}
    if not alpha_k.is_infinite:
        sigma = spec.substitution_elasticity
        weight_ratio = spec.weight(primary) / spec.weight(secondary)
        levels[primary] = alpha_k.flops * spec.labor_augmenting * labor * weight_ratio ** sigma
        if not alpha_o.is_infinite:
            levels[secondary] = levels[primary] * (alpha_o.flops / alpha_k.flops) ** sigma
    return AutomationThresholds(
        cognitive=levels[TaskClass.COGNITIVE],
        physical=levels[TaskClass.PHYSICAL],
    )


def automation_flags(result: AllocationResult, tasks: TaskPair, resources: ResourceState,
                     spec: ProductionSpec) -> AutomationFlags:
    """
    Whether each class is automated at the given optimum.

    From the allocation, a class is automated when it employs (almost) no
    labor, or when compute earns the full rent there after labor has already
    left the other class. From the thresholds, a class is automated when
    total compute reaches its threshold.
    """
    eps = solver_settings().automation_epsilon
    allocation = result.allocation
    labor_floor = eps * resources.labor
    mp = dict(zip(TaskClass, marginal_products(result.x_cognitive, result.x_physical, spec)))

    def from_allocation(task_class: TaskClass) -> bool:
        if allocation.labor(task_class) <= labor_floor:
            return True
        cost = tasks.cost(task_class)
        if cost.is_infinite or result.rent <= 0:
            return False
        displaced_elsewhere = allocation.labor(task_class.other) <= labor_floor
        return bool(displaced_elsewhere and mp[task_class] / cost.flops >= result.rent * (1.0 - eps))

    thresholds = automation_thresholds(tasks, spec, resources.labor)

    def from_threshold(task_class: TaskClass) -> bool:
        return resources.compute >= thresholds.for_class(task_class) * (1.0 - eps)

    return AutomationFlags(
        cognitive=from_allocation(TaskClass.COGNITIVE),
        physical=from_allocation(TaskClass.PHYSICAL),
        threshold_cognitive=from_threshold(TaskClass.COGNITIVE),
        threshold_physical=from_threshold(TaskClass.PHYSICAL),
    )


def kkt_residual(result: AllocationResult, tasks: TaskPair, spec: ProductionSpec) -> float:
    """
    Largest relative violation of the first-order conditions.

    Every employed use of a resource must earn its price; every unused use
    must earn weakly less.
    """
    allocation = result.allocation
    mp = dict(zip(TaskClass, marginal_products(result.x_cognitive, result.x_physical, spec)))
    residual = 0.0
    for task in tasks:
        task_class = task.task_class
        if result.wage > 0:
            gap = (result.wage - spec.labor_augmenting * mp[task_class]) / result.wage
            residual = max(residual, abs(gap) if allocation.labor(task_class) > 0 else -gap)
        if not task.cost.is_infinite and result.rent > 0:
            gap = (result.rent - mp[task_class] / task.cost.flops) / result.rent
            residual = max(residual, abs(gap) if allocation.compute(task_class) > 0 else -gap)
    return residual
