"""Shared test fixtures."""

import pytest

from okubo.compalg import Algebra, para, split_okubo, zorn
from okubo.fields import GF, QQ, Field, ratfunc
from okubo.settings import OkuboSettings


@pytest.fixture
def gf2() -> Field:
    return GF(2)


@pytest.fixture
def gf3() -> Field:
    return GF(3)


@pytest.fixture
def gf4() -> Field:
    return GF(2, 2)


@pytest.fixture
def gf5() -> Field:
    return GF(5)


@pytest.fixture
def gf7() -> Field:
    return GF(7)


@pytest.fixture
def gf9() -> Field:
    return GF(3, 2)


@pytest.fixture
def qq() -> Field:
    return QQ


@pytest.fixture
def f3t() -> Field:
    return ratfunc(3)


@pytest.fixture
def settings() -> OkuboSettings:
    # explicit values, independent of the environment and any config file
    return OkuboSettings(seed=0, max_height=3, random_pairs=500, random_pairs_infinite=16)


@pytest.fixture
def zorn3(gf3: Field) -> Algebra:
    return zorn(gf3)


@pytest.fixture
def okubo3(gf3: Field) -> Algebra:
    return split_okubo(gf3)


@pytest.fixture
def para_zorn3(zorn3: Algebra) -> Algebra:
    return para(zorn3)
