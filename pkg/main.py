"""
Command-line entry point.

Sub-commands:
- polylog: tabulate S and C of a trigonometric polylogarithm
- profile: revival profile of the Riemann step at t = p*pi/q
- compare: closed form against the truncated Fourier series
- kernel: periodic Hilbert, ILW and Smith kernels
- verify: invariant suite with a pass/fail table

CSV goes to standard output or --output; diagnostics go to standard error
at the verbosity set by REVIVAL_LOG.
"""

import typer

from commands import compare, kernel, polylog, profile, verify
from utils.logging import get_logger, setup_logging

logger = get_logger(__name__)

app = typer.Typer(
    name="revival",
    help="Closed-form revival profiles of linear dispersive equations at rational times.",
    no_args_is_help=True,
    add_completion=False,
    pretty_exceptions_enable=False,
)


@app.callback()
def main() -> None:
    """Closed-form revival profiles of linear dispersive equations at rational times."""
    setup_logging()
    logger.debug("Logging initialized for the revival command line")


app.command("polylog")(polylog.polylog)
app.command("profile")(profile.profile)
app.command("compare")(compare.compare)
app.command("kernel")(kernel.kernel)
app.command("verify")(verify.verify)


if __name__ == "__main__":
    app()
