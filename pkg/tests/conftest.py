import pytest
from src.core.gf import FieldCtx, field_of_order


@pytest.fixture(scope="session")
def F2() -> FieldCtx:
    return field_of_order(2)


@pytest.fixture(scope="session")
def F3() -> FieldCtx:
    return field_of_order(3)


@pytest.fixture(scope="session")
def F4() -> FieldCtx:
    return field_of_order(4)


@pytest.fixture(scope="session")
def F9() -> FieldCtx:
    return field_of_order(9)
