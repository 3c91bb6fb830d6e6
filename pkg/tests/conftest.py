import pytest

from fareysums.totient import build_totient_table


@pytest.fixture(scope="session")
def table_10k():
    return build_totient_table(10_000)
