"""
Tabulate the periodic convolution kernels.
"""

from typing import Annotated

import typer

from commands import (
    X_MAX_DEFAULT,
    X_MIN_DEFAULT,
    GridOption,
    OutputOption,
    XMaxOption,
    XMinOption,
    load_config,
    usage_error,
)
from commands.profile import DeltaOption
from models.cli import Command
from models.kernels import KernelKind, KernelSample
from services.errors import RevivalError
from services.kernels import tabulate_kernel
from utils.csv_output import write_rows
from utils.logging import get_logger

logger = get_logger(__name__)


def _column(sample: KernelSample) -> float | None:
    """The Smith kernel is purely imaginary; its imaginary part is written."""
    if sample.value is None:
        return None
    if isinstance(sample.value, complex):
        return sample.value.imag
    return sample.value


def kernel(
    kind: Annotated[KernelKind, typer.Option("--kind", help="hilbert, ilw or smith")],
    delta: DeltaOption = None,
    nterms: Annotated[
        int | None,
        typer.Option("--nterms", help="Truncation of the image sum (ilw 400, smith 10)"),
    ] = None,
    grid: GridOption = None,
    x_min: XMinOption = X_MIN_DEFAULT,
    x_max: XMaxOption = X_MAX_DEFAULT,
    output: OutputOption = None,
) -> None:
    """
    Write x,value for a periodic kernel as CSV, nan at the poles 2*pi*m.

    Example:
        revival kernel --kind ilw --delta 1 --grid 201
    """
    config = load_config(
        command=Command.KERNEL,
        kind=kind,
        delta=delta,
        nterms=nterms,
        grid_points=grid,
        x_min=x_min,
        x_max=x_max,
        output_path=output,
    )
    points = config.grid()
    logger.info(f"Tabulating the {config.kind} kernel on {points.size} points")

    try:
        samples = tabulate_kernel(config.kind, points, delta=config.delta, nterms=config.nterms)
    except (RevivalError, ValueError) as e:
        logger.error(f"Kernel tabulation failed: {e!s}")
        raise usage_error(e) from e

    flagged = sum(sample.pole_proximity_flag for sample in samples)
    if flagged:
        logger.info(f"{flagged} points lie at a pole and are written as nan")
    write_rows(("x", "value"), ((s.x, _column(s)) for s in samples), config.output_path)
