"""
CSV export of a model's joint utility grid

Header: attribute names, then "utility". One row per grid point in
lexicographic order (last attribute fastest). Levels are written with repr
so they re-import exactly; utilities carry 12 significant digits.
"""

import csv
import logging
from pathlib import Path
from typing import Dict, List, Union

from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import ModelFileError, ModelValidationError, PrefCalcError
from prefcalc.utility.model import DEFAULT_CONTEXT, UtilityModel, table_model
from prefcalc.utility.validation import validate_model
from prefcalc.utils.validators import errors_of

logger = logging.getLogger(__name__)

UTILITY_COLUMN = "utility"


def format_utility(value: float) -> str:
    return f"{value:.12g}"


def export_grid_csv(model: UtilityModel, path: Union[str, Path]) -> Path:
    """
    Write the joint utility at every grid point

    Args:
        model: Utility model
        path: Output file

    Returns:
        Path written
    """
    path = Path(path)
    values = model.grid_values()
    try:
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow([*model.space.names, UTILITY_COLUMN])
            for index, point in zip(model.space.grid_indices(), model.space.grid_points()):
                writer.writerow([*(repr(level) for level in point), format_utility(float(values[index]))])
    except OSError as e:
        raise ModelFileError(f"cannot write grid file {path}: {e}") from e
    logger.info(f"Wrote {model.space.size} grid rows to {path}")
    return path


def load_grid_csv(path: Union[str, Path], context: str = DEFAULT_CONTEXT) -> UtilityModel:
    """
    Re-import an exported grid as a table model

    Args:
        path: CSV file written by export_grid_csv
        context: State-of-preference label for the new model

    Returns:
        UtilityModel with a table joint

    Raises:
        ModelFileError: Missing file or malformed rows
        ModelValidationError: Imported table fails validate_model
    """
    path = Path(path)
    if not path.is_file():
        raise ModelFileError(f"grid file not found: {path}")
    try:
        with path.open("r", encoding="utf-8", newline="") as handle:
            rows = list(csv.reader(handle))
    except OSError as e:
        raise ModelFileError(f"cannot read grid file {path}: {e}") from e

    if not rows or len(rows[0]) < 2 or rows[0][-1] != UTILITY_COLUMN:
        raise ModelFileError(f"{path}: header must list attribute names followed by '{UTILITY_COLUMN}'")
    names = rows[0][:-1]

    points: List[tuple] = []
    utilities: List[float] = []
    for number, row in enumerate(rows[1:], start=2):
        if len(row) != len(names) + 1:
            raise ModelFileError(f"{path}:{number}: expected {len(names) + 1} fields, got {len(row)}")
        try:
            *levels, utility = (float(field) for field in row)
        except ValueError as e:
            raise ModelFileError(f"{path}:{number}: {e}") from e
        points.append(tuple(levels))
        utilities.append(utility)

    grid: Dict[str, List[float]] = {
        name: sorted({p[i] for p in points}) for i, name in enumerate(names)
    }
    try:
        space = AttributeSpace.from_levels([(name, grid[name]) for name in names])
    except PrefCalcError as e:
        raise ModelFileError(f"{path}: {e}") from e

    expected = list(space.grid_points())
    if points != expected:
        raise ModelFileError(f"{path}: rows must cover the full grid in lexicographic order")

    model = table_model(space, utilities, context)
    diagnostics = validate_model(model)
    errors = errors_of(diagnostics)
    if errors:
        raise ModelValidationError(
            "imported grid failed validation: " + "; ".join(d.message for d in errors), diagnostics
        )
    logger.info(f"Loaded {len(points)} grid rows from {path}")
    return model
