"""
Shared plumbing for the scenario-driven management commands.

Exit codes: 0 on success, 1 on solver errors, 2 on invalid input.
"""
import logging
from argparse import ArgumentParser
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from growth.exceptions import GrowthError, InvalidParameter, UnknownParameter
from growth.scenario_file import (
    Document,
    ScenarioFile,
    bundled_scenario_path,
    load_document,
    parse_scenario,
    validation_lines,
)

logger = logging.getLogger(__name__)

VALIDATION_EXIT = 2
SOLVER_EXIT = 1


def invalid_input(message: str) -> CommandError:
    return CommandError(message, returncode=VALIDATION_EXIT)


def parse_floats(text: str, option: str, expected: Optional[int] = None) -> List[float]:
    """Comma-separated numbers from a command-line option."""
    try:
        values = [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise invalid_input(f"{option}: expected comma-separated numbers, got {text!r}")
    if expected is not None and len(values) != expected:
        raise invalid_input(f"{option}: expected {expected} comma-separated values, got {text!r}")
    return values


class ScenarioCommand(BaseCommand):
    """Base class for commands that read a scenario file."""

    def add_arguments(self, parser: ArgumentParser) -> None:
        """Add command line arguments."""
        parser.add_argument(
            '--scenario',
            type=str,
            default=None,
            help='Scenario file (.toml or .json); defaults to the bundled paper.toml'
        )

    def add_output_arguments(self, parser: ArgumentParser, formats: List[str]) -> None:
        """Add ``--out`` and ``--format``; the first format is the default."""
        parser.add_argument(
            '--out',
            type=str,
            default='-',
            help='Output path, or - for stdout (default: -)'
        )
        parser.add_argument(
            '--format',
            type=str,
            default=formats[0],
            choices=formats,
            help=f'Output format (default: {formats[0]})'
        )

    def load(self, options: Dict[str, Any]) -> Tuple[Document, ScenarioFile]:
        """Read and validate the scenario named by ``--scenario``."""
        path = Path(options['scenario']) if options.get('scenario') else bundled_scenario_path()
        try:
            document = load_document(path)
            return document, parse_scenario(document)
        except ValidationError as e:
            raise invalid_input("\n".join(validation_lines(e)))

    @contextmanager
    def solver_errors(self) -> Iterator[None]:
        """Map model errors raised inside the block to command exit codes."""
        try:
            yield
        except ValidationError as e:
            raise invalid_input("\n".join(validation_lines(e)))
        except (InvalidParameter, UnknownParameter) as e:
            raise invalid_input(str(e))
        except GrowthError as e:
            logger.error(f"Solver error: {str(e)}", exc_info=True)
            where = f" (t={e.t!r})" if e.t is not None else ""
            raise CommandError(f"{str(e)}{where}", returncode=SOLVER_EXIT)

    def run_group(self, signatures: List[Any]) -> List[Dict[str, Any]]:
        """
        Run task signatures as one Celery group.

        Rows come back in submission order. The first failed task decides
        the exit code.
        """
        from celery import group  # type: ignore

        from moravec_growth.celery import app

        results: List[Dict[str, Any]] = group(signatures, app=app).apply_async().get()

        rows: List[Dict[str, Any]] = []
        for result in results:
            if result['errors']:
                message = "\n".join(result['errors'])
                if result['error_kind'] == 'validation':
                    raise invalid_input(message)
                raise CommandError(message, returncode=SOLVER_EXIT)
            rows.append(result['row'])
        return rows

    def emit(self, text: str, out: str) -> None:
        """Write ``text`` verbatim to stdout (``-``) or to a file."""
        if out == '-':
            self.stdout.write(text, ending='')
            return
        with open(out, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        logger.info(f"Wrote {out}")

    def emit_report(self, title: str, lines: List[str], out: str) -> None:
        """Write a text report; the title is styled only on the console."""
        if out == '-':
            self.stdout.write(self.style.SUCCESS(title))
            for line in lines:
                self.stdout.write(line)
            return
        self.emit("\n".join([title, *lines]) + "\n", out)
