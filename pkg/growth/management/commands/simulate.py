"""
Management command to simulate a scenario over a time grid.
"""
import logging
from argparse import ArgumentParser
from typing import Any, List

from growth.dynamics import check_time_grid, simulate, time_grid
from growth.management.base import ScenarioCommand, invalid_input, parse_floats
from growth.reporting import TRAJECTORY_COLUMNS, to_csv, to_json, trajectory_rows
from growth.scenario_file import ScenarioFile
from growth.tasks import simulate_point

logger = logging.getLogger(__name__)


class Command(ScenarioCommand):
    """Command to simulate allocations, prices and shares along the compute path."""

    help = 'Simulate a scenario and write the trajectory as CSV or JSON'

    def add_arguments(self, parser: ArgumentParser) -> None:
        """Add command line arguments."""
        super().add_arguments(parser)
        self.add_output_arguments(parser, formats=['csv', 'json'])
        parser.add_argument('--t-start', type=float, default=None, help='First year of the grid')
        parser.add_argument('--t-end', type=float, default=None, help='Last year of the grid')
        parser.add_argument('--t-step', type=float, default=None, help='Grid step in years')
        parser.add_argument(
            '--times',
            type=str,
            default=None,
            help='Comma-separated years to evaluate instead of a uniform grid'
        )
        parser.add_argument(
            '--distributed',
            action='store_true',
            help='Evaluate each time as a Celery task'
        )

    def _grid(self, scenario_file: ScenarioFile, options: Any) -> List[float]:
        if options.get('times'):
            times = parse_floats(options['times'], '--times')
            if not times:
                raise invalid_input("--times: no times given")
            return times
        window = scenario_file.window
        t_start = window.t_start if options.get('t_start') is None else options['t_start']
        t_end = window.t_end if options.get('t_end') is None else options['t_end']
        t_step = window.t_step if options.get('t_step') is None else options['t_step']
        if not t_step > 0:
            raise invalid_input(f"--t-step: must be positive, got {t_step!r}")
        if t_start < 0 or t_end < t_start:
            raise invalid_input(f"--t-start/--t-end: need 0 <= t_start <= t_end, got {t_start!r}, {t_end!r}")
        return time_grid(t_start, t_end, t_step)

    def handle(self, *args: Any, **options: Any) -> None:
        """Execute the command."""
        document, scenario_file = self.load(options)
        grid = self._grid(scenario_file, options)

        with self.solver_errors():
            if options['distributed']:
                rows = self.run_group([simulate_point.s(document, t) for t in check_time_grid(grid)])
            else:
                rows = trajectory_rows(simulate(scenario_file.scenario, grid))

        if options['format'] == 'json':
            text = to_json(rows)
        else:
            text = to_csv(rows, TRAJECTORY_COLUMNS)
        self.emit(text, options['out'])
        logger.info(f"Simulated {len(rows)} points")
