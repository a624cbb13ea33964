"""
Management command to sweep one scenario parameter over a range.
"""
import logging
from argparse import ArgumentParser
from typing import Any

from growth.management.base import ScenarioCommand, invalid_input, parse_floats
from growth.reporting import NOT_REACHED, UNDETERMINED, to_csv, to_json
from growth.scenario_file import resolve_parameter_path, sweep_values
from growth.sweep import SWEEP_COLUMNS, evaluate_point
from growth.tasks import evaluate_sweep_point

logger = logging.getLogger(__name__)

MISSING_TOKENS = {
    'limiting_labor_share': UNDETERMINED,
    'cognitive_automation_time': NOT_REACHED,
    'physical_automation_time': NOT_REACHED,
}


class Command(ScenarioCommand):
    """Command to tabulate long-run verdicts across parameter values."""

    help = 'Sweep one numeric scenario field and report the verdict per value'

    def add_arguments(self, parser: ArgumentParser) -> None:
        """Add command line arguments."""
        super().add_arguments(parser)
        parser.add_argument(
            '--param',
            type=str,
            required=True,
            help='Field to sweep: dotted path (tasks.alpha_p) or leaf name (alpha_p)'
        )
        parser.add_argument(
            '--range',
            type=str,
            required=True,
            help='lo,hi,count; log-spaced for costs and compute levels when lo > 0'
        )
        self.add_output_arguments(parser, formats=['csv', 'json'])
        parser.add_argument(
            '--distributed',
            action='store_true',
            help='Evaluate rows as Celery tasks'
        )

    def handle(self, *args: Any, **options: Any) -> None:
        """Execute the command."""
        document, _ = self.load(options)
        lo, hi, count = parse_floats(options['range'], '--range', expected=3)
        if count != int(count):
            raise invalid_input(f"--range: count must be an integer, got {count!r}")

        with self.solver_errors():
            parameter = resolve_parameter_path(options['param'])
            values = sweep_values(parameter, lo, hi, int(count))
            if options['distributed']:
                rows = self.run_group([evaluate_sweep_point.s(document, parameter, value) for value in values])
            else:
                rows = [evaluate_point(document, parameter, value) for value in values]

        if options['format'] == 'json':
            text = to_json(rows)
        else:
            text = to_csv(rows, SWEEP_COLUMNS, missing=MISSING_TOKENS)
        self.emit(text, options['out'])
        logger.info(f"Swept {parameter} over {len(rows)} values")
