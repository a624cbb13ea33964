"""
Tabular output for trajectories and sweeps.

CSV numbers are written in scientific notation with 17 significant digits,
which re-parses to the exact doubles; booleans are ``true``/``false``.
JSON uses the shortest round-trip representation and ``null`` for missing
or infinite values.
"""
import json
import math
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, TextIO

import pandas as pd

from .dynamics import TrajectoryPoint

TRAJECTORY_COLUMNS = [
    't', 'Q', 'Y', 'wage', 'rent', 'labor_share', 'compute_share',
    'L_c', 'L_p', 'Q_c', 'Q_p', 'cog_automated', 'phys_automated',
]

NOT_REACHED = 'not-reached'
UNDETERMINED = 'undetermined'

FLOAT_FORMAT = '%.16e'


def trajectory_row(point: TrajectoryPoint) -> Dict[str, Any]:
    result = point.result
    allocation = result.allocation
    return {
        't': point.t,
        'Q': point.q,
        'Y': result.output,
        'wage': result.wage,
        'rent': result.rent,
        'labor_share': result.labor_share,
        'compute_share': result.compute_share,
        'L_c': allocation.labor_cognitive,
        'L_p': allocation.labor_physical,
        'Q_c': allocation.compute_cognitive,
        'Q_p': allocation.compute_physical,
        'cog_automated': point.flags.cognitive,
        'phys_automated': point.flags.physical,
    }


def trajectory_rows(points: Iterable[TrajectoryPoint]) -> List[Dict[str, Any]]:
    return [trajectory_row(point) for point in points]


def _csv_cell(value: Any, missing: str) -> str:
    if value is None:
        return missing
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (int, float)):
        return FLOAT_FORMAT % float(value)
    return str(value)


def to_csv(rows: Sequence[Mapping[str, Any]], columns: Sequence[str],
           missing: Optional[Mapping[str, str]] = None) -> str:
    """
    Render rows as CSV text.

    Args:
        missing: Token written for None, per column (empty by default).
    """
    missing = missing or {}
    # Cells are formatted before the frame is built so None never becomes NaN.
    cells = [[_csv_cell(row.get(column), missing.get(column, '')) for column in columns] for row in rows]
    frame = pd.DataFrame(cells, columns=list(columns))
    return frame.to_csv(index=False, lineterminator='\n')


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    return value


def to_json(payload: Any) -> str:
    return json.dumps(_json_value(payload), indent=2, allow_nan=False) + '\n'


def read_csv(path_or_buffer: Any) -> pd.DataFrame:
    """Read a CSV written by ``to_csv`` back at full precision."""
    frame = pd.read_csv(path_or_buffer, float_precision='round_trip', keep_default_na=False)
    for column in frame.columns:
        values = set(frame[column].astype(str))
        if values and values <= {'true', 'false'}:
            frame[column] = frame[column].astype(str) == 'true'
    return frame


def format_years(value: Optional[float]) -> str:
    return NOT_REACHED if value is None else f"{value:.3f}"
