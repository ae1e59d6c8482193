import sys
from pathlib import Path

import pytest

from artifact.argumentation import parse_argument, parse_preferences
from artifact.kb import parse_program

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))


def fixture_text(name):
    return (FIXTURES / name).read_text()


@pytest.fixture
def p1():
    return parse_program(fixture_text("p1.delp"))


@pytest.fixture
def p3(p1):
    return parse_program(fixture_text("p1.delp") + "\na -< x.\n")


@pytest.fixture
def p3_prefs():
    return parse_preferences(fixture_text("p3.prefs"))


@pytest.fixture
def a_arg():
    return parse_argument(fixture_text("a_arg.delp"))


@pytest.fixture
def fixtures_dir():
    return FIXTURES
