"""
Scenario documents: loading, validation and parameter overrides.

A document is a nested mapping (TOML or JSON on disk) with the sections
``production``, ``tasks``, ``labor``, ``compute`` and ``simulation``.
Validation collects every problem before failing, keyed by dotted path.
"""
import copy
import json
import logging
import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib  # type: ignore[no-redef]
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from .dynamics import BoundedSaturatingPath, ComputeKind, ComputePath, ExponentialPath, Scenario
from .exceptions import GrowthError, InvalidParameter, UnknownParameter
from .models import AutomationCost, ProductionFamily, ProductionSpec, TaskPair

logger = logging.getLogger(__name__)

Document = Dict[str, Any]

DEFAULT_SCENARIO = 'paper.toml'

SECTIONS: Dict[str, Tuple[str, ...]] = {
    'production': ('family', 'beta', 'rho', 'A0', 'AL0', 'g_A', 'g_AL'),
    'tasks': ('alpha_c', 'alpha_p'),
    'labor': ('L0', 'g_L'),
    'compute': ('kind', 'Q0', 'g', 'Qmax', 'rate'),
    'simulation': ('t_start', 't_end', 't_step'),
}

# Numeric fields a sweep may vary.
SWEEPABLE_FIELDS: Tuple[str, ...] = (
    'production.beta', 'production.rho', 'production.A0', 'production.AL0',
    'production.g_A', 'production.g_AL',
    'tasks.alpha_c', 'tasks.alpha_p',
    'labor.L0', 'labor.g_L',
    'compute.Q0', 'compute.g', 'compute.Qmax', 'compute.rate',
)

LOG_SPACED_FIELDS = frozenset({'tasks.alpha_c', 'tasks.alpha_p', 'compute.Q0', 'compute.Qmax'})

_MISSING = object()


@dataclass(frozen=True)
class SimulationWindow:
    t_start: float = 0.0
    t_end: float = 100.0
    t_step: float = 1.0


@dataclass(frozen=True)
class ScenarioFile:
    """A validated document: the scenario and its default simulation window."""
    scenario: Scenario
    window: SimulationWindow


def scenario_dir() -> Path:
    configured = getattr(settings, 'SCENARIO_DIR', None) if settings.configured else None
    return Path(configured) if configured else Path(__file__).resolve().parent / 'scenarios'


def bundled_scenario_path(name: str = DEFAULT_SCENARIO) -> Path:
    return scenario_dir() / name


def validation_lines(error: ValidationError) -> List[str]:
    """One ``path: reason`` line per diagnostic, sorted by path."""
    if hasattr(error, 'error_dict'):
        return [
            f"{path}: {message}"
            for path, messages in sorted(error.message_dict.items())
            for message in messages
        ]
    return list(error.messages)


def load_document(path: Union[str, Path]) -> Document:
    """
    Read a scenario document from a ``.toml`` or ``.json`` file.

    Raises:
        ValidationError: If the file is missing, unreadable or malformed.
    """
    path = Path(path)
    if not path.is_file():
        raise ValidationError({'scenario': [f"file not found: {path}"]})
    suffix = path.suffix.lower()
    try:
        if suffix == '.toml':
            with path.open('rb') as handle:
                document = tomllib.load(handle)
        elif suffix == '.json':
            with path.open('r', encoding='utf-8') as handle:
                document = json.load(handle)
        else:
            raise ValidationError({'scenario': [f"unsupported format {suffix!r}; use .toml or .json"]})
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ValidationError({'scenario': [f"cannot parse {path.name}: {e}"]})
    if not isinstance(document, dict):
        raise ValidationError({'scenario': ["top level must be a table of sections"]})
    logger.info(f"Loaded scenario document {path}")
    return document


class _DocumentReader:
    """Field accessor that records diagnostics instead of raising."""

    def __init__(self, document: Document) -> None:
        self.document = document
        self.errors: Dict[str, List[str]] = {}

    def error(self, path: str, message: str) -> None:
        self.errors.setdefault(path, []).append(message)

    def section(self, name: str) -> Dict[str, Any]:
        value = self.document.get(name, {})
        if not isinstance(value, dict):
            self.error(name, "must be a table")
            return {}
        for key in value:
            if key not in SECTIONS[name]:
                self.error(f"{name}.{key}", "unknown field")
        return value

    def raw(self, section: Dict[str, Any], path: str, default: Any = _MISSING) -> Any:
        key = path.split('.', 1)[1]
        value = section.get(key, _MISSING)
        if value is _MISSING or value == '':
            if default is _MISSING:
                self.error(path, "is required")
            return default
        return value

    def number(self, section: Dict[str, Any], path: str, default: Any = _MISSING,
               check: Optional[Callable[[float], bool]] = None,
               requirement: str = '') -> Optional[float]:
        value = self.raw(section, path, default)
        if value is _MISSING or value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.error(path, f"must be a number, got {value!r}")
            return None
        number = float(value)
        if not math.isfinite(number):
            self.error(path, "must be finite")
            return None
        if check is not None and not check(number):
            self.error(path, f"must be {requirement}, got {value!r}")
            return None
        return number

    def cost(self, section: Dict[str, Any], path: str) -> Optional[AutomationCost]:
        value = self.raw(section, path)
        if value is _MISSING:
            return None
        try:
            return AutomationCost.parse(value)
        except (InvalidParameter, TypeError) as e:
            self.error(path, str(e))
            return None

    def choice(self, section: Dict[str, Any], path: str, choices: List[str], default: str) -> Optional[str]:
        value = self.raw(section, path, default)
        if value not in choices:
            self.error(path, f"must be one of {', '.join(choices)}, got {value!r}")
            return None
        return str(value)

    def forbid(self, section: Dict[str, Any], path: str, reason: str) -> None:
        if path.split('.', 1)[1] in section:
            self.error(path, reason)


def _positive(x: float) -> bool:
    return x > 0


def _nonnegative(x: float) -> bool:
    return x >= 0


def _unit_interval(x: float) -> bool:
    return 0 < x < 1


def parse_scenario(document: Document) -> ScenarioFile:
    """
    Validate a document and build the scenario it describes.

    Raises:
        ValidationError: With one entry per offending dotted field path.
    """
    reader = _DocumentReader(document)
    for name in document:
        if name not in SECTIONS:
            reader.error(name, "unknown section")

    production = reader.section('production')
    family = reader.choice(production, 'production.family', list(ProductionFamily.values),
                           ProductionFamily.COBB_DOUGLAS.value)
    beta = reader.number(production, 'production.beta', check=_unit_interval, requirement='in (0, 1)')
    rho: Optional[float] = None
    if family == ProductionFamily.CES:
        rho = reader.number(production, 'production.rho',
                            check=lambda x: x < 1 and x != 0, requirement='below 1 and nonzero')
    elif family == ProductionFamily.COBB_DOUGLAS:
        reader.forbid(production, 'production.rho', "only applies to CES production")
    a0 = reader.number(production, 'production.A0', 1.0, _positive, 'positive')
    al0 = reader.number(production, 'production.AL0', 1.0, _positive, 'positive')
    g_a = reader.number(production, 'production.g_A', 0.0)
    g_al = reader.number(production, 'production.g_AL', 0.0)

    tasks = reader.section('tasks')
    alpha_c = reader.cost(tasks, 'tasks.alpha_c')
    alpha_p = reader.cost(tasks, 'tasks.alpha_p')

    labor = reader.section('labor')
    l0 = reader.number(labor, 'labor.L0', check=_positive, requirement='positive')
    g_l = reader.number(labor, 'labor.g_L', 0.0)

    compute = reader.section('compute')
    kind = reader.choice(compute, 'compute.kind', list(ComputeKind.values), ComputeKind.EXPONENTIAL.value)
    q0 = reader.number(compute, 'compute.Q0', check=_nonnegative, requirement='nonnegative')
    path: Optional[ComputePath] = None
    if kind == ComputeKind.EXPONENTIAL:
        g = reader.number(compute, 'compute.g')
        for key in ('Qmax', 'rate'):
            reader.forbid(compute, f'compute.{key}', "only applies to bounded compute paths")
        if q0 is not None and g is not None:
            path = ExponentialPath(q0=q0, growth=g)
    elif kind == ComputeKind.BOUNDED:
        q_max = reader.number(compute, 'compute.Qmax', check=_positive, requirement='positive')
        rate = reader.number(compute, 'compute.rate', check=_positive, requirement='positive')
        reader.forbid(compute, 'compute.g', "only applies to exponential compute paths")
        if q0 is not None and q_max is not None and q_max < q0:
            reader.error('compute.Qmax', f"must be at least compute.Q0 ({q0!r}), got {q_max!r}")
        elif q0 is not None and q_max is not None and rate is not None:
            path = BoundedSaturatingPath(q0=q0, q_max=q_max, rate=rate)

    simulation = reader.section('simulation')
    t_start = reader.number(simulation, 'simulation.t_start', 0.0, _nonnegative, 'nonnegative')
    t_end = reader.number(simulation, 'simulation.t_end', 100.0, _nonnegative, 'nonnegative')
    t_step = reader.number(simulation, 'simulation.t_step', 1.0, _positive, 'positive')
    if t_start is not None and t_end is not None and t_end < t_start:
        reader.error('simulation.t_end', f"must not precede simulation.t_start ({t_start!r})")

    if reader.errors:
        raise ValidationError(reader.errors)

    assert family is not None and beta is not None and l0 is not None and path is not None
    assert alpha_c is not None and alpha_p is not None
    assert a0 is not None and al0 is not None and g_a is not None and g_al is not None and g_l is not None
    assert t_start is not None and t_end is not None and t_step is not None
    try:
        scenario = Scenario(
            tasks=TaskPair.from_costs(alpha_c, alpha_p),
            production=ProductionSpec(ProductionFamily(family), beta, rho, a0, al0),
            labor_supply=l0,
            compute_path=path,
            g_a=g_a,
            g_al=g_al,
            g_l=g_l,
        )
    except GrowthError as e:
        raise ValidationError({'scenario': [str(e)]})
    return ScenarioFile(scenario=scenario, window=SimulationWindow(t_start, t_end, t_step))


def load_scenario(path: Union[str, Path]) -> ScenarioFile:
    return parse_scenario(load_document(path))


def resolve_parameter_path(path: str) -> str:
    """
    Full dotted path of a sweepable field, given either the dotted path or
    its leaf name.

    Raises:
        UnknownParameter: If the path names no numeric scenario field.
    """
    if path in SWEEPABLE_FIELDS:
        return path
    matches = [field for field in SWEEPABLE_FIELDS if field.split('.', 1)[1] == path]
    if len(matches) == 1:
        return matches[0]
    raise UnknownParameter(
        f"Unknown parameter {path!r}; expected one of {', '.join(SWEEPABLE_FIELDS)}."
    )


def set_parameter(document: Document, path: str, value: float) -> Document:
    """A copy of the document with one field replaced."""
    section, key = resolve_parameter_path(path).split('.', 1)
    updated = copy.deepcopy(document)
    target = updated.setdefault(section, {})
    if not isinstance(target, dict):
        raise ValidationError({section: ["must be a table"]})
    target[key] = value
    return updated


def sweep_values(path: str, lo: float, hi: float, count: int) -> List[float]:
    """
    Grid of values for a sweep: geometric for magnitudes with lo > 0,
    linear otherwise.

    Raises:
        InvalidParameter: If ``count`` < 2 or the range is empty.
        UnknownParameter: If ``path`` is not sweepable.
    """
    field = resolve_parameter_path(path)
    if count < 2:
        raise InvalidParameter(f"A sweep needs at least 2 points, got {count!r}.")
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise InvalidParameter(f"Sweep range must satisfy lo < hi, got ({lo!r}, {hi!r}).")
    if field in LOG_SPACED_FIELDS and lo > 0:
        values = np.geomspace(lo, hi, count)
    else:
        values = np.linspace(lo, hi, count)
    return [float(v) for v in values]
