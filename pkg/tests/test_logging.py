import json
import logging

import numpy as np

from utils.logging import JSONFormatter, resolve_level


def _record(message: str, **extra) -> logging.LogRecord:
    record = logging.LogRecord("services.kernels", logging.INFO, __file__, 1, message, None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_resolve_level():
    """Test REVIVAL_LOG values map onto logging levels."""
    assert resolve_level("error") == logging.ERROR
    assert resolve_level("DEBUG") == logging.DEBUG
    assert resolve_level("unknown") == logging.INFO


def test_json_formatter_fields():
    """Test the JSON record carries the standard fields and extras."""
    payload = json.loads(JSONFormatter().format(_record("alpha computed", delta=2.0)))

    assert payload["level"] == "INFO"
    assert payload["logger"] == "services.kernels"
    assert payload["message"] == "alpha computed"
    assert payload["delta"] == 2.0


def test_json_formatter_numpy_values():
    """Test numpy scalars, arrays and complex values become JSON values."""
    record = _record(
        "sample", count=np.int64(3), grid=np.array([0.5, 1.5]), value=complex(0.0, -2.0)
    )
    payload = json.loads(JSONFormatter().format(record))

    assert payload["count"] == 3
    assert payload["grid"] == [0.5, 1.5]
    assert payload["value"] == {"real": 0.0, "imag": -2.0}
