import contextlib

import numpy as np
import pytest

_ACCEPTANCE = []


@pytest.fixture
def rng():
    return np.random.default_rng(20200710)


@pytest.fixture
def criterion():
    """Record one acceptance line: ``with criterion("5", "cascade law") as note: ...``."""

    @contextlib.contextmanager
    def record(number, title):
        details = []
        try:
            yield details.append
        except BaseException as exc:
            _ACCEPTANCE.append((number, "FAIL", title, "; ".join(details + [f"{type(exc).__name__}: {exc}"])))
            raise
        _ACCEPTANCE.append((number, "PASS", title, "; ".join(details)))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, detail in _ACCEPTANCE:
        line = f"[{status}] {number:>3}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
