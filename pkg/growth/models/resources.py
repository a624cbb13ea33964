"""Resource endowments, allocations and the task-output identity."""
import math
from dataclasses import dataclass
from typing import Dict, Tuple

from growth.exceptions import InfiniteCostWithCompute, InvalidParameter
from .automation import AutomationCost, TaskClass, TaskPair


def _check_flow(name: str, value: float) -> None:
    if isinstance(value, bool) or not math.isfinite(value) or value < 0:
        raise InvalidParameter(f"{name} must be a finite nonnegative flow, got {value!r}.")


@dataclass(frozen=True)
class ResourceState:
    """Total compute (FLOP/yr) and labor (human-hours/yr) available at an instant."""
    compute: float
    labor: float

    def __post_init__(self) -> None:
        _check_flow('compute', self.compute)
        _check_flow('labor', self.labor)


@dataclass(frozen=True)
class Allocation:
    """Split of labor and compute across the cognitive and physical aggregates."""
    labor_cognitive: float
    labor_physical: float
    compute_cognitive: float
    compute_physical: float

    def __post_init__(self) -> None:
        _check_flow('labor_cognitive', self.labor_cognitive)
        _check_flow('labor_physical', self.labor_physical)
        _check_flow('compute_cognitive', self.compute_cognitive)
        _check_flow('compute_physical', self.compute_physical)

    @classmethod
    def by_class(cls, labor: Dict[TaskClass, float],
                 compute: Dict[TaskClass, float]) -> 'Allocation':
        """Build from mappings keyed by ``TaskClass``."""
        return cls(
            labor_cognitive=labor[TaskClass.COGNITIVE],
            labor_physical=labor[TaskClass.PHYSICAL],
            compute_cognitive=compute[TaskClass.COGNITIVE],
            compute_physical=compute[TaskClass.PHYSICAL],
        )

    def labor(self, task_class: TaskClass) -> float:
        if task_class is TaskClass.COGNITIVE:
            return self.labor_cognitive
        return self.labor_physical

    def compute(self, task_class: TaskClass) -> float:
        if task_class is TaskClass.COGNITIVE:
            return self.compute_cognitive
        return self.compute_physical

    @property
    def total_labor(self) -> float:
        return self.labor_cognitive + self.labor_physical

    @property
    def total_compute(self) -> float:
        return self.compute_cognitive + self.compute_physical

    def is_feasible(self, resources: ResourceState, rel_tol: float = 1e-12) -> bool:
        """Whether both resource constraints hold up to ``rel_tol``."""
        return (
            self.total_labor <= resources.labor * (1.0 + rel_tol)
            and self.total_compute <= resources.compute * (1.0 + rel_tol)
        )


def task_output(labor: float, compute: float, cost: AutomationCost,
                labor_augmenting: float = 1.0) -> float:
    """
    Effective quantity of a task: A^L * L + Q / alpha.

    Args:
        labor: Human-hours per year assigned to the task.
        compute: FLOP per year assigned to the task.
        cost: Automation cost of the task.
        labor_augmenting: Labor-augmenting productivity A^L.

    Returns:
        Human-hour equivalents per year.

    Raises:
        InfiniteCostWithCompute: If compute is assigned to an infinite-cost task.
    """
    _check_flow('labor', labor)
    _check_flow('compute', compute)
    if cost.is_infinite and compute > 0:
        raise InfiniteCostWithCompute(
            f"{compute!r} FLOP/yr assigned to a task with infinite automation cost."
        )
    return labor_augmenting * labor + cost.compute_equivalent(compute)


def aggregates(allocation: Allocation, tasks: TaskPair,
               labor_augmenting: float) -> Tuple[float, float]:
    """(x_cognitive, x_physical) implied by an allocation of the two tasks."""
    alpha_c, alpha_p = tasks.cognitive.cost, tasks.physical.cost
    return (
        task_output(allocation.labor_cognitive, allocation.compute_cognitive, alpha_c, labor_augmenting),
        task_output(allocation.labor_physical, allocation.compute_physical, alpha_p, labor_augmenting),
    )
