import csv
import io
import os

import numpy as np
import pytest

# Quiet diagnostics before the settings are read
os.environ["REVIVAL_LOG"] = "error"
os.environ["LOG_TO_FILE"] = "false"

from typer.testing import CliRunner

from main import app


@pytest.fixture
def rng():
    """
    Seeded generator for sampled evaluation points.
    """
    return np.random.default_rng(12345)


@pytest.fixture
def runner():
    """
    Command-line runner for the Typer application.
    """
    return CliRunner()


@pytest.fixture
def invoke(runner):
    """
    Invoke the revival command line with a list of arguments.
    """

    def _invoke(*args: str):
        return runner.invoke(app, [str(arg) for arg in args])

    return _invoke


def read_csv(text: str) -> tuple[list[str], list[list[float]]]:
    """Split CSV text into its header and float rows."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = [[float(value) for value in row] for row in reader if row]
    return header, rows


@pytest.fixture
def parse_csv():
    """
    Parse CSV output of a command into (header, rows).
    """
    return read_csv
