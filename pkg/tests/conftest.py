import pytest

from support import reference_account, reference_economy


@pytest.fixture
def account():
    return reference_account()


@pytest.fixture
def economy():
    return reference_economy()
