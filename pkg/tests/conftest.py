"""
Pytest configuration and shared fixtures for the weight computation tests.
"""

import pytest
import tempfile
import shutil
from random import Random

import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.modules import free_module, polynomial_algebra, trivial_module
from geometry.groups import GroupCatalog
from geometry.toric import projective_space_fan
from models.fan import Fan
from models.graded import GradedModule, PolynomialRingData
from models.matrix import RatMatrix
from utils.config_manager import ConfigManager

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir)


@pytest.fixture
def config_manager(temp_dir):
    """ConfigManager writing into a temporary directory."""
    return ConfigManager(temp_dir)


@pytest.fixture
def bundled_manager():
    """ConfigManager over the bundled data directory."""
    return ConfigManager(DATA_DIR)


@pytest.fixture
def seed():
    """Seed shared by every randomized test."""
    return 20240611


@pytest.fixture
def rng(seed):
    return Random(seed)


@pytest.fixture
def ring_t():
    """Q[t], t in degree 2."""
    return PolynomialRingData(generator_degrees=[2])


@pytest.fixture
def ring_t2():
    """Q[t1, t2], both in degree 2."""
    return PolynomialRingData(generator_degrees=[2, 2])


@pytest.fixture
def trivial_t(ring_t):
    return trivial_module(ring_t, 8)


@pytest.fixture
def free_t(ring_t):
    return free_module(ring_t, [0], 8)


@pytest.fixture
def algebra_t(ring_t):
    return polynomial_algebra(ring_t, 8)


@pytest.fixture
def catalog():
    return GroupCatalog()


@pytest.fixture
def p2_fan():
    return projective_space_fan(2)


@pytest.fixture
def c2_minus_origin():
    return Fan(rank=2, rays=[[1, 0], [0, 1]], max_cones=[[0], [1]], name="C2-0")


@pytest.fixture
def noncommuting_module(ring_t2):
    """t1 and t2 act on Q + Q^2 + Q without commuting."""
    actions = [
        {0: RatMatrix.from_rows([[1], [0]]), 2: RatMatrix.from_rows([[1, 0]])},
        {0: RatMatrix.from_rows([[0], [1]]), 2: RatMatrix.from_rows([[1, 0]])},
    ]
    return GradedModule(ring=ring_t2, truncation_degree=4, dims={0: 1, 2: 2, 4: 1}, actions=actions, name="bad")
