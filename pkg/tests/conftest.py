import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qdm.catalog import ACTIONS, action  # noqa: E402
from qdm.cells import torus_grid  # noqa: E402
from qdm.space import ModelSpace  # noqa: E402

FIXTURE_ACTIONS = ["D2Z2", "D3Z2", "D4Z2-I", "D4Z2-II", "D3Z3"]


@pytest.fixture(params=FIXTURE_ACTIONS)
def action_name(request):
    return request.param


def torus_space(name, rows, cols):
    return ModelSpace(torus_grid(rows, cols), action(name))


__all__ = ["ACTIONS", "FIXTURE_ACTIONS", "torus_space"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
