import random

import pytest

from nashaxioms import build_game, build_named_class, d_closure, strict_closure
from nashaxioms import fixtures


@pytest.fixture(scope="session")
def ex2():
    return fixtures.safe_coordination()


@pytest.fixture(scope="session")
def ex5():
    return fixtures.duplicate_row_game()


@pytest.fixture(scope="session")
def pd():
    return fixtures.prisoners_dilemma()


@pytest.fixture(scope="session")
def cube():
    return fixtures.three_player_cube()


@pytest.fixture(scope="session")
def chain():
    return fixtures.one_player_chain()


@pytest.fixture(scope="session")
def pd_dclosed():
    return build_named_class("pd_dclosed")


@pytest.fixture(scope="session")
def ex2_dclosed():
    return build_named_class("ex2_dclosed")


@pytest.fixture(scope="session")
def ex3_cons():
    return build_named_class("ex3_cons")


@pytest.fixture(scope="session")
def ex4_class():
    return build_named_class("ex4")


@pytest.fixture(scope="session")
def ex5_class():
    return build_named_class("ex5")


@pytest.fixture(scope="session")
def ex5_dclosed(ex5):
    return d_closure([ex5])


@pytest.fixture(scope="session")
def cube_dclosed(cube):
    return d_closure([cube])


@pytest.fixture(scope="session")
def chain_strict(chain):
    return strict_closure([chain])


def random_game(rng: random.Random, max_players: int = 3, max_strategies: int = 3):
    n = rng.randint(1, max_players)
    shape = [rng.randint(1, max_strategies) for _ in range(n)]
    labels = [[f"p{i}s{k}" for k in range(shape[i])] for i in range(n)]
    total = 1
    for k in shape:
        total *= k
    tables = [
        [rng.randrange(0, total) for _ in range(total)] for _ in range(n)
    ]
    return build_game(n, labels, ranks=tables)


def random_subsets(rng: random.Random, game):
    out = []
    for size in game.shape:
        count = rng.randint(1, size)
        out.append(tuple(sorted(rng.sample(range(size), count))))
    return tuple(out)
