"""
Closed-form long-run results.

Under constant returns the labor share depends on the state only through
z = Q / (A^L * L), so the limit follows from the drift of log z: compute
growth net of labor and labor-augmenting growth.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

from django.db import models

from .allocator import allocate
from .dynamics import BoundedSaturatingPath, Scenario
from .exceptions import InvalidParameter
from .models import ProductionFamily, ProductionSpec, ResourceState, TaskClass, ces_weight_share

logger = logging.getLogger(__name__)

DRIFT_TOLERANCE = 1e-12


class Regime(models.TextChoices):
    FINITE = 'finite', 'Finite compute'
    UNBOUNDED = 'unbounded', 'Unbounded compute'


class VerdictReason(models.TextChoices):
    NO_AUTOMATABLE_TASK = 'no-automatable-task', 'No task can be automated'
    COMPUTE_NEGLIGIBLE = 'compute-negligible', 'Compute falls behind effective labor'
    SATURATION_POINT = 'saturation-point', 'Share at the saturation level of compute'
    BALANCED_GROWTH = 'balanced-growth', 'Compute grows with effective labor'
    FULL_AUTOMATION = 'full-automation', 'Both task classes are automated'
    UNAUTOMATABLE_BOTTLENECK = 'unautomatable-bottleneck', 'Labor share tends to the bottleneck weight'
    RATIO_DIVERGES = 'ratio-diverges', 'Quantity ratio diverges under CES'


@dataclass(frozen=True)
class AsymptoticVerdict:
    """
    Long-run labor share of a scenario.

    ``limiting_labor_share`` is None when the limit is undetermined.
    """
    regime: Regime
    limiting_labor_share: Optional[float]
    reason: VerdictReason

    def __post_init__(self) -> None:
        share = self.limiting_labor_share
        if share is not None and not 0.0 <= share <= 1.0:
            raise InvalidParameter(f"Limiting labor share must lie in [0, 1], got {share!r}.")

    @property
    def is_determined(self) -> bool:
        return self.limiting_labor_share is not None


def _regime(scenario: Scenario) -> Regime:
    return Regime.FINITE if scenario.compute_path.is_bounded else Regime.UNBOUNDED


def asymptotic_labor_share(scenario: Scenario) -> AsymptoticVerdict:
    """
    Limit of the labor share as t grows without bound.

    When effective labor outgrows compute the share tends to 1. When the two
    grow at the same rate (or compute saturates with effective labor
    constant) the state ratio converges and the allocator is evaluated at the
    limit. When compute outgrows effective labor, every automatable class is
    eventually automated: the share tends to 0 if both are, to the
    unautomatable class's weight under Cobb-Douglas, and is undetermined
    under CES because the quantity ratio diverges.
    """
    regime = _regime(scenario)
    tasks = scenario.tasks
    primary, secondary = tasks.compute_favoured()
    if tasks.cost(primary).is_infinite:
        return AsymptoticVerdict(regime, 1.0, VerdictReason.NO_AUTOMATABLE_TASK)

    path = scenario.compute_path
    drift = path.asymptotic_growth - scenario.g_l - scenario.g_al
    if path.limit == 0.0 or drift < -DRIFT_TOLERANCE:
        return AsymptoticVerdict(regime, 1.0, VerdictReason.COMPUTE_NEGLIGIBLE)

    if math.isclose(drift, 0.0, abs_tol=DRIFT_TOLERANCE):
        limit_compute = path.limit if isinstance(path, BoundedSaturatingPath) else path.q0
        result = allocate(
            ResourceState(compute=limit_compute, labor=scenario.labor_supply),
            tasks,
            scenario.production,
        )
        reason = (
            VerdictReason.SATURATION_POINT
            if isinstance(path, BoundedSaturatingPath) else VerdictReason.BALANCED_GROWTH
        )
        return AsymptoticVerdict(regime, result.labor_share, reason)

    if not tasks.cost(secondary).is_infinite:
        return AsymptoticVerdict(regime, 0.0, VerdictReason.FULL_AUTOMATION)
    if scenario.production.family == ProductionFamily.COBB_DOUGLAS:
        return AsymptoticVerdict(
            regime, scenario.production.weight(secondary), VerdictReason.UNAUTOMATABLE_BOTTLENECK
        )
    logger.debug("CES quantity ratio diverges; limiting share left undetermined")
    return AsymptoticVerdict(regime, None, VerdictReason.RATIO_DIVERGES)


def ces_share(x_c: float, x_p: float, beta: float, rho: float) -> float:
    """
    Physical aggregate's income share under CES at the quantities (x_c, x_p).

    Raises:
        InvalidParameter: On nonpositive quantities, beta outside (0, 1), or
            rho outside (-inf, 1) minus {0}.
    """
    if not (x_c > 0 and x_p > 0 and math.isfinite(x_c) and math.isfinite(x_p)):
        raise InvalidParameter(f"CES quantities must be positive, got ({x_c!r}, {x_p!r}).")
    if not 0.0 < beta < 1.0:
        raise InvalidParameter(f"beta must lie in (0, 1), got {beta!r}.")
    if not math.isfinite(rho) or rho >= 1.0 or rho == 0.0:
        raise InvalidParameter(f"rho must be below 1 and nonzero, got {rho!r}.")
    return ces_weight_share(x_c, x_p, beta, rho)


def classify_bottleneck(spec: ProductionSpec, task_class: TaskClass) -> bool:
    """
    Whether an aggregate is a bottleneck: output can only grow without bound
    if its quantity or its marginal product does too.

    Both aggregates are bottlenecks under Cobb-Douglas and complementary
    CES; neither is under substitutable CES, where output grows in the
    other input alone with this one's marginal product bounded.
    """
    if spec.family == ProductionFamily.COBB_DOUGLAS:
        return True
    return spec.curvature < 0


def uniform_cost_counterfactual(scenario: Scenario) -> Scenario:
    """The scenario with physical work as cheap to automate as cognitive work."""
    cognitive_cost = scenario.tasks.cognitive.cost
    return scenario.with_costs(alpha_c=cognitive_cost, alpha_p=cognitive_cost)
