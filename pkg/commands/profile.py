"""
Evaluate the solution of the periodic Riemann problem at a rational time.

The closed method sums the finitely many polylogarithm terms of the revival
profile; the series method truncates the Fourier series of the evolution.
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
from models.cli import Command, Method, RunConfig
from models.dispersion import Equation
from models.evolution import FourierInitialData, Preset
from services.errors import RevivalError
from services.evolution import evolve_series
from services.revival import evaluate_profile, profile_terms
from utils.csv_output import write_rows
from utils.logging import get_logger

logger = get_logger(__name__)

EquationOption = Annotated[Equation, typer.Option("--equation", "-e", help="Dispersion relation")]
POption = Annotated[int, typer.Option("--p", help="Time numerator, t = p*pi/q")]
QOption = Annotated[int, typer.Option("--q", help="Time denominator")]
DeltaOption = Annotated[
    float | None, typer.Option("--delta", help="Depth, required for ilw and smith")
]
NModesOption = Annotated[
    int | None, typer.Option("--nmodes", help="Fourier modes of the series method")
]
DataOption = Annotated[
    Preset,
    typer.Option("--data", help="Initial data: riemann_step or integrated_delta (bo only)"),
]


def closed_values(config: RunConfig, points: np.ndarray) -> np.ndarray:
    """
    Closed-form profile on the points, nan within the node tolerance.

    Logs the certified error bound for the approximate ilw and smith profiles.
    """
    profile = profile_terms(config.spec, config.time, data=config.data)
    if profile.error_bound > 0:
        logger.info(
            f"{profile.spec.label} closed form at t={profile.time} is within "
            f"{profile.error_bound:.3e} of the exact solution"
        )
    return np.asarray(evaluate_profile(profile, points, on_node="nan"), dtype=float)


def series_values(config: RunConfig, points: np.ndarray) -> np.ndarray:
    """Truncated Fourier series with config.nmodes modes on the points."""
    data = FourierInitialData(preset=config.data)
    return np.asarray(
        evolve_series(config.spec, data, config.time, points, config.nmodes), dtype=float
    )


def profile(
    equation: EquationOption,
    p: POption = 0,
    q: QOption = 1,
    delta: DeltaOption = None,
    method: Annotated[
        Method, typer.Option("--method", help="closed form or truncated series")
    ] = Method.CLOSED,
    nmodes: NModesOption = None,
    data: DataOption = Preset.RIEMANN_STEP,
    grid: GridOption = None,
    x_min: XMinOption = X_MIN_DEFAULT,
    x_max: XMaxOption = X_MAX_DEFAULT,
    output: OutputOption = None,
) -> None:
    """
    Write u(t, x) at t = p*pi/q as CSV with header x,u.

    The closed method writes nan at points within the node tolerance of a
    jump or cusp. ilw and smith closed forms are approximations whose error
    bound is logged at info level.

    Example:
        revival profile --equation kdv --p 1 --q 3 --method closed
    """
    config = load_config(
        command=Command.PROFILE,
        equation=equation,
        p=p,
        q=q,
        delta=delta,
        method=method,
        nmodes=nmodes,
        data=data,
        grid_points=grid,
        x_min=x_min,
        x_max=x_max,
        output_path=output,
    )
    points = config.grid()
    logger.info(
        f"Profile of {config.spec.label} at t={config.time} by the {config.method} method "
        f"on {points.size} points"
    )

    try:
        if config.method is Method.CLOSED:
            values = closed_values(config, points)
        else:
            values = series_values(config, points)
    except (RevivalError, ValueError) as e:
        logger.error(f"Profile evaluation failed: {e!s}")
        raise usage_error(e) from e

    write_rows(("x", "u"), zip(points.tolist(), values.tolist(), strict=True), config.output_path)
