"""
Management command to report automation thresholds and crossing times.
"""
import logging
import math
from argparse import ArgumentParser
from typing import Any, Dict, List, Optional

from growth.allocator import automation_thresholds
from growth.dynamics import cognitive_automation_time, persistence_check, physical_automation_time
from growth.management.base import ScenarioCommand, invalid_input
from growth.reporting import format_years, to_json

logger = logging.getLogger(__name__)


class Command(ScenarioCommand):
    """Command to report when each task class is automated."""

    help = 'Report automation thresholds, crossing times and the persistence verdict'

    def add_arguments(self, parser: ArgumentParser) -> None:
        """Add command line arguments."""
        super().add_arguments(parser)
        parser.add_argument(
            '--labor-flow',
            type=float,
            default=None,
            help='Long-run labor flow to the physical task for the persistence check '
                 '(default: the scenario labor supply L0)'
        )
        self.add_output_arguments(parser, formats=['text', 'json'])

    def handle(self, *args: Any, **options: Any) -> None:
        """Execute the command."""
        _, scenario_file = self.load(options)
        scenario = scenario_file.scenario
        labor_flow = options.get('labor_flow')
        if labor_flow is None:
            labor_flow = scenario.labor_supply
        elif not labor_flow > 0:
            raise invalid_input(f"--labor-flow: must be positive, got {labor_flow!r}")

        with self.solver_errors():
            levels = automation_thresholds(scenario.tasks, scenario.production, scenario.labor_supply)
            report: Dict[str, Any] = {
                'cognitive_automation_time': cognitive_automation_time(scenario),
                'physical_automation_time': physical_automation_time(scenario),
                'cognitive_threshold': levels.cognitive,
                'physical_threshold': levels.physical,
                'persistence': None,
            }
            path = scenario.compute_path
            if path.is_bounded:
                report['persistence'] = persistence_check(
                    scenario.tasks.physical.cost, labor_flow, path.limit
                ) if path.limit > 0 else True

        for key in ('cognitive_automation_time', 'physical_automation_time'):
            if report[key] is None:
                logger.warning(f"{key.replace('_', ' ')}: threshold never reached")

        if options['format'] == 'json':
            self.emit(to_json(report), options['out'])
            return
        self.emit_report("=== Automation Thresholds ===", self._report_lines(report), options['out'])

    def _report_lines(self, report: Dict[str, Any]) -> List[str]:
        """Format the report for the console."""
        def level(value: float) -> str:
            return 'inf' if math.isinf(value) else f"{value:.6e}"

        persistence: Optional[bool] = report['persistence']
        return [
            f"cognitive_automation_time: {format_years(report['cognitive_automation_time'])}",
            f"physical_automation_time: {format_years(report['physical_automation_time'])}",
            f"cognitive_threshold: {level(report['cognitive_threshold'])}",
            f"physical_threshold: {level(report['physical_threshold'])}",
            f"persistence: {'n/a' if persistence is None else str(persistence).lower()}",
        ]
