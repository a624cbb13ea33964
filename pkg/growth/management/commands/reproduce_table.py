"""
Management command to print the key values of a scenario over time.

Rows are taken at t = 0, at the cognitive crossing time and at t = 100,
followed by the long-run verdict for the scenario and for the uniform-cost
benchmark in which physical work is as cheap to automate as cognitive work.
"""
import logging
from argparse import ArgumentParser
from typing import Any, Dict, List

from growth.analysis import AsymptoticVerdict, asymptotic_labor_share, uniform_cost_counterfactual
from growth.dynamics import (
    Scenario,
    TrajectoryPoint,
    cognitive_automation_time,
    physical_automation_time,
    simulate,
)
from growth.management.base import ScenarioCommand
from growth.reporting import TRAJECTORY_COLUMNS, format_years, to_csv, to_json, trajectory_rows

logger = logging.getLogger(__name__)

LATE_YEAR = 100.0


def _verdict_dict(verdict: AsymptoticVerdict) -> Dict[str, Any]:
    return {
        'regime': verdict.regime.value,
        'limiting_labor_share': verdict.limiting_labor_share,
        'reason': verdict.reason.value,
    }


class Command(ScenarioCommand):
    """Command to reproduce the key-values table of a scenario."""

    help = 'Print compute, automation status and labor share at the milestone years'

    def add_arguments(self, parser: ArgumentParser) -> None:
        """Add command line arguments."""
        super().add_arguments(parser)
        self.add_output_arguments(parser, formats=['text', 'csv', 'json'])

    def _milestones(self, scenario: Scenario) -> List[float]:
        times = [0.0, LATE_YEAR]
        crossing = cognitive_automation_time(scenario)
        if crossing is None:
            logger.warning("Cognitive threshold is never reached; skipping the crossing row")
        elif 0.0 < crossing < LATE_YEAR:
            times.insert(1, crossing)
        return times

    def handle(self, *args: Any, **options: Any) -> None:
        """Execute the command."""
        _, scenario_file = self.load(options)
        scenario = scenario_file.scenario

        with self.solver_errors():
            points = simulate(scenario, self._milestones(scenario))
            benchmark = uniform_cost_counterfactual(scenario)
            report: Dict[str, Any] = {
                'rows': trajectory_rows(points),
                'cognitive_automation_time': cognitive_automation_time(scenario),
                'physical_automation_time': physical_automation_time(scenario),
                'asymptotic': _verdict_dict(asymptotic_labor_share(scenario)),
                'uniform_cost': {
                    **_verdict_dict(asymptotic_labor_share(benchmark)),
                    'physical_automation_time': physical_automation_time(benchmark),
                },
            }

        if options['format'] == 'json':
            self.emit(to_json(report), options['out'])
        elif options['format'] == 'csv':
            self.emit(to_csv(report['rows'], TRAJECTORY_COLUMNS), options['out'])
        else:
            self.emit_report("=== Key Values Over Time ===", self._report_lines(points, report), options['out'])

    def _report_lines(self, points: List[TrajectoryPoint], report: Dict[str, Any]) -> List[str]:
        """Format the table and verdicts for the console."""
        def yes_no(flag: bool) -> str:
            return 'Yes' if flag else 'No'

        def share(value: Any) -> str:
            return 'undetermined' if value is None else f"{value:g}"

        lines = [f"{'t (years)':>10}  {'Q_t (FLOP/yr)':>14}  {'Cognitive':>9}  {'Physical':>8}  {'Labor share':>11}"]
        for point in points:
            lines.append(
                f"{point.t:>10.3f}  {point.q:>14.3e}  {yes_no(point.flags.cognitive):>9}  "
                f"{yes_no(point.flags.physical):>8}  {point.result.labor_share:>11.6f}"
            )
        asymptotic = report['asymptotic']
        uniform = report['uniform_cost']
        lines += [
            "",
            f"cognitive_automation_time: {format_years(report['cognitive_automation_time'])}",
            f"physical_automation_time: {format_years(report['physical_automation_time'])}",
            f"long-run labor share: {share(asymptotic['limiting_labor_share'])} ({asymptotic['reason']})",
            f"uniform-cost benchmark: long-run labor share {share(uniform['limiting_labor_share'])} "
            f"({uniform['reason']}), physical automated at {format_years(uniform['physical_automation_time'])}",
        ]
        return lines
