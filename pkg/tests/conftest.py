import pytest

from guesswho.bipartite import solve_bipartite
from guesswho.tripartite import solve_tripartite


@pytest.fixture(scope="session")
def bi24():
    return solve_bipartite(24)


@pytest.fixture(scope="session")
def tri24():
    return solve_tripartite(24)


@pytest.fixture(scope="session")
def bi40():
    return solve_bipartite(40)


@pytest.fixture(scope="session")
def tri40():
    return solve_tripartite(40)
