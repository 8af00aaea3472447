import random

import pytest

from app.core.geometry import compile_program, pure_braid_generator_program
from app.core.group_core import GWord


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def w4():
    def parse(text):
        return GWord.parse(text, 4)
    return parse


@pytest.fixture(scope="session")
def a13_word():
    return compile_program(pure_braid_generator_program(4, 1, 3)).word
