"""
Tests for settings, JSON persistence and random input generation.
"""

import json
import os
from random import Random

import pytest
from pydantic import ValidationError
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.linalg import rank
from engine.spectral_sequence import validate_filtered_complex
from geometry.groups import GroupCatalog
from models.errors import ValidationFailure
from models.tor import BigradedTor
from models.graded import WeightedGradedVectorSpace
from utils.config_manager import load_settings
from utils.random_inputs import (
    ModuleRecipe,
    QuotientSummand,
    random_filtered_complex,
    random_invertible,
    random_module,
    random_module_recipe,
)
from utils.validators import validate_module


@pytest.fixture
def clean_env(monkeypatch):
    """os.environ without EMW_ variables; anything load_dotenv adds is dropped afterwards."""
    environ = {k: v for k, v in os.environ.items() if not k.startswith("EMW_")}
    monkeypatch.setattr(os, "environ", environ)
    return environ


class TestSettings:
    """Test environment-driven settings."""

    def test_defaults(self, clean_env, temp_dir):
        settings = load_settings(temp_dir / "missing.env")
        assert settings.default_degree == 12
        assert settings.workers == 1
        assert settings.log_level == "INFO"

    def test_env_file(self, clean_env, temp_dir):
        env = temp_dir / ".env"
        env.write_text("EMW_DEFAULT_DEGREE=16\nEMW_WORKERS=3\nEMW_LOG_LEVEL=debug\n", encoding="utf-8")
        settings = load_settings(env)
        assert settings.default_degree == 16
        assert settings.workers == 3
        assert settings.log_level == "DEBUG"

    def test_bad_log_level(self, clean_env, temp_dir):
        clean_env["EMW_LOG_LEVEL"] = "LOUD"
        with pytest.raises(ValidationError):
            load_settings(temp_dir / "missing.env")


class TestConfigManager:
    """Test JSON persistence."""

    def test_module_round_trip(self, config_manager, temp_dir, free_t):
        path = config_manager.save_module(free_t, temp_dir / "modules" / "free.json")
        loaded = config_manager.load_module(path)
        assert loaded.dims == free_t.dims
        assert loaded.action(0, 4) == free_t.action(0, 4)

    def test_fan_round_trip(self, config_manager, temp_dir, p2_fan):
        path = config_manager.save_fan(p2_fan, temp_dir / "p2.json")
        assert config_manager.load_fan(path) == p2_fan

    def test_tor_and_weights(self, config_manager, temp_dir):
        table = BigradedTor(dims={(0, 0): 1, (1, 2): 1}, trusted_q_bound=6)
        loaded = config_manager.load_tor(config_manager.save_tor(table, temp_dir / "tor.json"))
        assert loaded.dims == table.dims
        assert loaded.trusted_q_bound == 6
        weights = WeightedGradedVectorSpace(entries={(0, 0): 1, (3, 4): 1}, degree_bound=4)
        path = config_manager.save_weights(weights, temp_dir / "weights.json")
        assert config_manager.load_weights(path).entries == weights.entries

    def test_invalid_fan(self, config_manager, temp_dir):
        path = temp_dir / "bad.json"
        path.write_text(json.dumps({"rank": 1, "rays": [[2]], "max_cones": [[0]]}), encoding="utf-8")
        with pytest.raises(ValidationFailure):
            config_manager.load_fan(path)

    def test_invalid_json(self, config_manager, temp_dir):
        path = temp_dir / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValidationFailure):
            config_manager.load_json(path)

    def test_missing_file(self, config_manager, temp_dir):
        with pytest.raises(FileNotFoundError):
            config_manager.load_module(temp_dir / "nothing.json")

    def test_stratification_needs_orbits(self, config_manager, temp_dir):
        path = temp_dir / "strata.json"
        path.write_text(json.dumps({"name": "empty"}), encoding="utf-8")
        with pytest.raises(ValidationFailure):
            config_manager.load_stratification_data(path)

    def test_bundled_fixtures(self, bundled_manager):
        names = [path.stem for path in bundled_manager.list_fixtures("fans")]
        assert "pp2" in names and "c2_minus_origin" in names
        assert bundled_manager.fixture("modules", "free_t").exists()
        assert {"cstar_n", "hirzebruch_a"} <= set(names)
        assert "E8" in GroupCatalog(bundled_manager.base_path / "groups.yaml").exceptional

    def test_unknown_fixture(self, bundled_manager):
        with pytest.raises(ValueError):
            bundled_manager.list_fixtures("groups")
        with pytest.raises(FileNotFoundError):
            bundled_manager.fixture("fans", "p7")


class TestRandomInputs:
    """Test random modules and filtered complexes."""

    def test_recipe_is_reproducible(self):
        first = random_module_recipe(Random(7), seed=7)
        second = random_module_recipe(Random(7), seed=7)
        assert first == second
        assert first.build(8).dims == second.build(8).dims

    def test_random_modules_are_valid_and_small(self, rng):
        for _ in range(10):
            module = random_module(rng, D=10, max_dim=4)
            assert validate_module(module)["is_valid"]
            assert all(dim <= 4 for dim in module.dims.values())

    def test_recipe_rebuilds_at_any_degree(self, rng):
        recipe = random_module_recipe(rng, ring_rank=2)
        small, large = recipe.build(6), recipe.build(10)
        assert small.truncation_degree == 6
        assert large.truncation_degree == 10
        assert all(large.dim(k) == small.dim(k) for k in range(7))

    def test_shifted_summand(self):
        recipe = ModuleRecipe(
            ring_rank=1,
            summands=[QuotientSummand(variable_count=1, degree_cap=1, shift=2, forms=[[1]])],
        )
        module = recipe.build(8)
        assert module.dims == {2: 1, 4: 1}

    def test_random_invertible(self, rng):
        for n in (1, 3, 5):
            assert rank(random_invertible(rng, n)) == n

    def test_random_filtered_complex_is_valid(self, rng):
        for _ in range(10):
            validate_filtered_complex(random_filtered_complex(rng))
