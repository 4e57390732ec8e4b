"""
Fixtures partagées
"""
import random
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import DEFAULT_SEED
from core.hypergraph import Matching, grid_3x3


@pytest.fixture
def grid():
    """Lignes et colonnes de la grille 3x3."""
    return grid_3x3()


@pytest.fixture
def grid_rows():
    """Couplage parfait formé des trois lignes."""
    return Matching(((1, 2, 3), (4, 5, 6), (7, 8, 9)))


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)
