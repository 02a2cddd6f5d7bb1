import pytest

from spintime import FRAME33, make_algebra, matrix_rep, so_generators
from spintime.spinlie import killing_form, structure_constants


@pytest.fixture(scope="session")
def alg33():
    return make_algebra(FRAME33)


@pytest.fixture(scope="session")
def rep33():
    return matrix_rep(FRAME33)


@pytest.fixture(scope="session")
def gens33(alg33):
    return so_generators(alg33, half=True)


@pytest.fixture(scope="session")
def st33(gens33):
    return structure_constants(gens33)


@pytest.fixture(scope="session")
def killing33(st33):
    return killing_form(st33)
