"""Celery tasks evaluating sweep rows and trajectory points off-process."""
import logging
from typing import Any, Dict

from celery import shared_task  # type: ignore
from django.core.exceptions import ValidationError

from .dynamics import evaluate_at
from .exceptions import GrowthError, InvalidParameter, UnknownParameter
from .reporting import trajectory_row
from .scenario_file import Document, parse_scenario, validation_lines
from .sweep import evaluate_point

logger = logging.getLogger(__name__)


@shared_task(name="growth.tasks.evaluate_sweep_point")  # type: ignore[misc]
def evaluate_sweep_point(document: Document, parameter: str, value: float) -> Dict[str, Any]:
    """
    Evaluate one row of a parameter sweep.

    Args:
        document: Scenario document the sweep starts from.
        parameter: Dotted path or leaf name of the swept field.
        value: Value of the field for this row.

    Returns:
        Dict with the row (None on failure), the error kind and messages.
    """
    result: Dict[str, Any] = {
        'value': value,
        'row': None,
        'error_kind': None,
        'errors': [],
    }
    try:
        result['row'] = evaluate_point(document, parameter, value)
    except ValidationError as e:
        result['error_kind'] = 'validation'
        result['errors'] = validation_lines(e)
    except GrowthError as e:
        kind = 'validation' if isinstance(e, (InvalidParameter, UnknownParameter)) else 'solver'
        error_msg = f"Error evaluating {parameter}={value!r}: {str(e)}"
        logger.error(error_msg, exc_info=kind == 'solver')
        result['error_kind'] = kind
        result['errors'] = [error_msg]
    return result


@shared_task(name="growth.tasks.simulate_point")  # type: ignore[misc]
def simulate_point(document: Document, t: float) -> Dict[str, Any]:
    """
    Solve a scenario at one time.

    Returns:
        Dict with the trajectory row (None on failure) and any errors.
    """
    result: Dict[str, Any] = {
        't': t,
        'row': None,
        'error_kind': None,
        'errors': [],
    }
    try:
        scenario = parse_scenario(document).scenario
        result['row'] = trajectory_row(evaluate_at(scenario, t))
    except ValidationError as e:
        result['error_kind'] = 'validation'
        result['errors'] = validation_lines(e)
    except GrowthError as e:
        error_msg = f"Error simulating t={t!r}: {str(e)}"
        logger.error(error_msg, exc_info=True)
        result['error_kind'] = 'solver'
        result['errors'] = [error_msg]
    return result
