import pytest

from copsrobbers import generate, solve_copwin, value_iterate

FIXTURES = ("path:5", "paper-tree", "clique:3", "gavenciak")


@pytest.fixture(scope="session")
def graphs():
    specs = FIXTURES + ("cycle:4",)
    return {spec: generate(spec) for spec in specs}


@pytest.fixture(scope="session")
def solved(graphs):
    """Default-tolerance solves of the four finite fixtures plus cycle:4."""
    return {
        spec: value_iterate(graphs[spec], 1)
        for spec in FIXTURES + ("cycle:4",)
    }


@pytest.fixture(scope="session")
def solved_fine(graphs):
    """Tight-tolerance solves used where sampling noise must dominate."""
    return {spec: value_iterate(graphs[spec], 1, tol=1e-4) for spec in FIXTURES}


@pytest.fixture(scope="session")
def copwin_tables(graphs):
    return {spec: solve_copwin(graphs[spec], 1) for spec in FIXTURES + ("cycle:4",)}
