"""Parameter sweeps: long-run verdict and automation times per parameter value."""
import logging
from typing import Any, Dict

from .analysis import asymptotic_labor_share
from .dynamics import cognitive_automation_time, physical_automation_time
from .scenario_file import Document, parse_scenario, resolve_parameter_path, set_parameter

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    'parameter',
    'value',
    'regime',
    'limiting_labor_share',
    'reason',
    'cognitive_automation_time',
    'physical_automation_time',
]


def evaluate_point(document: Document, parameter: str, value: float) -> Dict[str, Any]:
    """
    One sweep row. Missing limits and unreached thresholds are None.

    Raises:
        UnknownParameter: If ``parameter`` is not sweepable.
        ValidationError: If the modified document is invalid.
        GrowthError: On solver failure.
    """
    field = resolve_parameter_path(parameter)
    scenario = parse_scenario(set_parameter(document, field, value)).scenario
    verdict = asymptotic_labor_share(scenario)
    row = {
        'parameter': field,
        'value': value,
        'regime': verdict.regime.value,
        'limiting_labor_share': verdict.limiting_labor_share,
        'reason': verdict.reason.value,
        'cognitive_automation_time': cognitive_automation_time(scenario),
        'physical_automation_time': physical_automation_time(scenario),
    }
    logger.debug(f"sweep {field}={value!r}: {row}")
    return row
