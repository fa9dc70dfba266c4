import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bifol.periodic import generate


@pytest.fixture(scope="session")
def grid3():
    return generate("trivial", 3)


@pytest.fixture(scope="session")
def loz1():
    return generate("lozenge")


@pytest.fixture(scope="session")
def chain3():
    return generate("chain", 3)


@pytest.fixture(scope="session")
def prong3():
    return generate("prong", 3)


@pytest.fixture(scope="session")
def ladder2():
    return generate("ladder", 2)


@pytest.fixture(scope="session")
def ladder3():
    return generate("ladder", 3)


@pytest.fixture(scope="session")
def skew2():
    return generate("skew", 2)


@pytest.fixture(scope="session")
def ladder_periodic():
    return generate("ladder_periodic")


@pytest.fixture(scope="session")
def scalloped():
    return generate("scalloped")


@pytest.fixture(scope="session")
def trivial_periodic():
    return generate("trivial_periodic")
