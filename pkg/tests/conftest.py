import json
from pathlib import Path

import pytest

from ellhyp.numerics import EllipticContext

DATA = Path(__file__).parent / "data"


@pytest.fixture
def ctx():
    return EllipticContext()


@pytest.fixture
def rng(ctx, request):
    return ctx.rng(request.node.name)


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "oracles.json").read_text())


def cval(pair):
    return complex(pair[0], pair[1])


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
