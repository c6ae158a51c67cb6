"""
Tabulate a trigonometric polylogarithm pair.
"""

from typing import Annotated

import numpy as np
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
from models.cli import Command
from models.polylog import PolylogIndex
from services.errors import RevivalError
from services.trigpolylog import eval_trig_polylog
from utils.csv_output import write_rows
from utils.logging import get_logger

logger = get_logger(__name__)


def polylog(
    j: Annotated[int, typer.Option("--j", help="Residue class, 1 <= j <= k")],
    k: Annotated[int, typer.Option("--k", help="Modulus")],
    r: Annotated[int, typer.Option("--r", help="Order, 1 to 3")],
    grid: GridOption = None,
    x_min: XMinOption = X_MIN_DEFAULT,
    x_max: XMaxOption = X_MAX_DEFAULT,
    output: OutputOption = None,
) -> None:
    """
    Write S and C of index (j, k, r) on a grid as CSV with header x,S,C.

    Points within the node tolerance of a node are written as nan.

    Example:
        revival polylog --k 2 --j 1 --r 1 --grid 5
    """
    config = load_config(
        command=Command.POLYLOG,
        j=j,
        k=k,
        r=r,
        grid_points=grid,
        x_min=x_min,
        x_max=x_max,
        output_path=output,
    )
    points = config.grid()
    logger.info(f"Tabulating S/C^{k}_{{{j},{r}}} on {points.size} points")

    try:
        idx = PolylogIndex(j=config.j, k=config.k, r=config.r)
        s_values, c_values = eval_trig_polylog(idx, points, on_node="nan")
    except (RevivalError, ValueError) as e:
        logger.error(f"Polylog tabulation failed for j={j}, k={k}, r={r}: {e!s}")
        raise usage_error(e) from e

    rows = zip(points.tolist(), np.asarray(s_values).tolist(), np.asarray(c_values).tolist(), strict=True)
    write_rows(("x", "S", "C"), rows, config.output_path)
