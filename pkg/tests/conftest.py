import numpy as np
import pytest

from adjcomp.lexicon import (
    AdjectiveEntry,
    AdjectiveType,
    Lexicon,
    default_lexicon,
)
from adjcomp.providers import ToyEmbedder


@pytest.fixture(scope="session")
def lex():
    return default_lexicon()


@pytest.fixture
def tiny_lex():
    """2 adjectives x 2 nouns; 8 phrases at max 2 adjectives."""
    return Lexicon(
        adjectives=(
            AdjectiveEntry("red", AdjectiveType.SUBSECTIVE_INTERSECTIVE),
            AdjectiveEntry("fake", AdjectiveType.NON_SUBSECTIVE_PRIVATIVE),
        ),
        nouns=("dog", "wall"),
    )


@pytest.fixture(scope="session")
def toy64():
    return ToyEmbedder(seed=42, dim=64)


def random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)
