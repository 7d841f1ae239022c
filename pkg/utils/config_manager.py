"""
Configuration Management Utilities

This module provides settings loading and JSON persistence for modules,
fans, stratifications, Tor tables and weight tables.
"""

from typing import Any, Dict, List, Optional
from pathlib import Path
import json
import logging
import os

from dotenv import load_dotenv

from models.config import Settings
from models.errors import ValidationFailure
from models.fan import Fan
from models.graded import GradedModule, WeightedGradedVectorSpace
from models.tor import BigradedTor

logger = logging.getLogger(__name__)

ENV_PREFIX = "EMW_"

FIXTURE_KINDS = ("fans", "strata", "modules")


def load_settings(env_path: Optional[Path] = None) -> Settings:
    """
    Read settings from the environment after loading an optional .env file.

    Args:
        env_path: Explicit .env file; defaults to the one next to the package
    """
    env_file = Path(env_path) if env_path else Path(__file__).resolve().parent.parent / ".env"
    if env_file.exists():
        load_dotenv(env_file)

    values: Dict[str, Any] = {}
    for field, variable in (
        ("default_degree", "DEFAULT_DEGREE"),
        ("workers", "WORKERS"),
        ("log_level", "LOG_LEVEL"),
        ("data_dir", "DATA_DIR"),
    ):
        raw = os.getenv(ENV_PREFIX + variable)
        if raw:
            values[field] = raw
    return Settings(**values)


class ConfigManager:
    """Loads and saves computation inputs and outputs as JSON."""

    def __init__(self, base_path: Optional[Path] = None):
        """
        Initialize the configuration manager.

        Args:
            base_path: Directory holding fans/, strata/, modules/ and groups.yaml
        """
        self.base_path = Path(base_path) if base_path else load_settings().data_dir

    def _read_json(self, path: Path) -> Dict[str, Any]:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"File not found: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as file:
                return json.load(file)
        except json.JSONDecodeError as e:
            logger.error(f"Failed to parse {path}: {e}")
            raise ValidationFailure(f"{path} is not valid JSON: {e}") from e

    def _write_json(self, data: Dict[str, Any], path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with open(path, 'w', encoding='utf-8') as file:
                json.dump(data, file, indent=2, sort_keys=True)
            logger.info(f"Saved {path}")
            return path
        except Exception as e:
            logger.error(f"Failed to save {path}: {e}")
            raise

    def load_json(self, path: Path) -> Dict[str, Any]:
        return self._read_json(path)

    def load_module(self, path: Path) -> GradedModule:
        data = self._read_json(path)
        module = GradedModule.from_json(data)
        logger.info(f"Loaded module {module.name or path} (truncated at {module.truncation_degree})")
        return module

    def save_module(self, module: GradedModule, path: Path) -> Path:
        return self._write_json(module.to_json(), path)

    def load_fan(self, path: Path) -> Fan:
        data = self._read_json(path)
        try:
            fan = Fan(**{k: v for k, v in data.items() if k in ("rank", "rays", "max_cones", "name")})
        except ValueError as e:
            logger.error(f"Invalid fan in {path}: {e}")
            raise ValidationFailure(f"invalid fan in {path}: {e}") from e
        return fan

    def save_fan(self, fan: Fan, path: Path) -> Path:
        return self._write_json(fan.to_json(), path)

    def load_stratification_data(self, path: Path) -> Dict[str, Any]:
        data = self._read_json(path)
        if not isinstance(data.get("orbits"), list):
            raise ValidationFailure(f"{path} has no orbit list")
        return data

    def load_tor(self, path: Path) -> BigradedTor:
        return BigradedTor.from_json(self._read_json(path))

    def save_tor(self, table: BigradedTor, path: Path) -> Path:
        return self._write_json(table.to_json(), path)

    def load_weights(self, path: Path) -> WeightedGradedVectorSpace:
        return WeightedGradedVectorSpace.from_json(self._read_json(path))

    def save_weights(self, table: WeightedGradedVectorSpace, path: Path) -> Path:
        return self._write_json(table.to_json(), path)

    def list_fixtures(self, kind: str) -> List[Path]:
        """
        Bundled fixture files of one kind, sorted by name.

        Args:
            kind: One of fans, strata, modules
        """
        if kind not in FIXTURE_KINDS:
            raise ValueError(f"unknown fixture kind {kind!r}; expected one of {FIXTURE_KINDS}")
        return sorted((self.base_path / kind).glob("*.json"))

    def fixture(self, kind: str, name: str) -> Path:
        path = self.base_path / kind / f"{name}.json"
        if not path.exists():
            raise FileNotFoundError(f"No bundled {kind} fixture named {name}")
        return path
