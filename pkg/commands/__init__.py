"""
Command-line sub-commands.

Each module exposes one command function that main.py registers on the
Typer app. Options are validated into a RunConfig; validation problems
become Typer usage errors, which exit with code 2.
"""

import math
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError

from models.cli import RunConfig
from services.errors import RevivalError

GridOption = Annotated[
    int | None,
    typer.Option("--grid", "--grid-points", help="Number of grid points, endpoints included"),
]
XMinOption = Annotated[float, typer.Option("--x-min", help="Left end of the grid")]
XMaxOption = Annotated[float, typer.Option("--x-max", help="Right end of the grid")]
OutputOption = Annotated[
    Path | None,
    typer.Option("--output", "-o", help="CSV file to write; standard output when omitted"),
]

X_MIN_DEFAULT = -math.pi
X_MAX_DEFAULT = math.pi


def load_config(**options) -> RunConfig:
    """
    Build a RunConfig, mapping validation errors onto a usage error.

    Options that are None fall back to the model defaults.

    Raises:
        typer.BadParameter: If the options do not form a valid run
    """
    x_min = options.pop("x_min", X_MIN_DEFAULT)
    x_max = options.pop("x_max", X_MAX_DEFAULT)
    values = {name: value for name, value in options.items() if value is not None}
    try:
        return RunConfig(x_range=(x_min, x_max), **values)
    except ValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        raise typer.BadParameter(messages) from e


def usage_error(error: RevivalError | ValueError) -> typer.BadParameter:
    """Wrap a domain error raised while computing into a usage error."""
    return typer.BadParameter(str(error))
