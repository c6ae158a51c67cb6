"""
Run the invariant suite and report pass or fail.
"""

from typing import Annotated

import typer

from services.verification import run_suite
from utils.logging import get_logger

logger = get_logger(__name__)


def verify(
    quick: Annotated[
        bool, typer.Option("--quick", help="Reduced sample sizes and truncation levels")
    ] = False,
    seed: Annotated[
        int | None, typer.Option("--seed", help="Seed for the sampled points")
    ] = None,
    tolerance_scale: Annotated[
        float, typer.Option("--tolerance-scale", hidden=True, min=0.0)
    ] = 1.0,
) -> None:
    """
    Print one row per invariant with its measured value and bound.

    Exits 0 when every invariant passes and 1 otherwise.
    """
    logger.info(f"Running the {'quick' if quick else 'full'} verification suite")
    report = run_suite(quick=quick, seed=seed, tolerance_scale=tolerance_scale)
    typer.echo(report.table())
    if not report.passed:
        names = ", ".join(result.name for result in report.failures)
        logger.error(f"Failed invariants: {names}")
        raise typer.Exit(code=1)
