"""Shared fixtures: bundled models are expensive enough to build once."""

import pytest

from sepinv import bundled


@pytest.fixture(scope="session")
def id10253():
    return bundled.id10253()


@pytest.fixture(scope="session")
def two_planes():
    return bundled.two_planes()


@pytest.fixture(scope="session")
def additive2():
    return bundled.additive(2)


@pytest.fixture(scope="session")
def additive3():
    return bundled.additive(3)
