"""Domain types and production technology of the two-task economy."""
from .automation import AutomationCost, TaskClass, TaskPair, TaskSpec
from .production import (
    ProductionFamily,
    ProductionSpec,
    aggregate_output,
    ces_weight_share,
    marginal_products,
    marginal_rate,
)
from .resources import Allocation, ResourceState, aggregates, task_output

__all__ = [
    'AutomationCost',
    'TaskClass',
    'TaskPair',
    'TaskSpec',
    'ProductionFamily',
    'ProductionSpec',
    'aggregate_output',
    'ces_weight_share',
    'marginal_products',
    'marginal_rate',
    'Allocation',
    'ResourceState',
    'aggregates',
    'task_output',
]
