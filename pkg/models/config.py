"""
Run Configuration Models

Settings come from the environment (optionally a .env file); RunConfig
carries one command-line invocation.
"""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class Method(str, Enum):
    """Tor construction to run."""
    KOSZUL = "koszul"
    BAR = "bar"
    SMITH = "smith"
    ALL = "all"


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"
    SVG = "svg"


class Settings(BaseModel):
    default_degree: int = Field(default=12, ge=0, description="Default truncation degree D")
    workers: int = Field(default=1, ge=1, description="Threads for per-degree slices")
    log_level: str = Field(default="INFO")
    data_dir: Path = Field(default=Path(__file__).resolve().parent.parent / "data")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v}")
        return level


class RunConfig(BaseModel):
    command: str
    inputs: List[str] = Field(default_factory=list)
    degree: Optional[int] = Field(default=None, ge=0, description="Truncation degree D; None means the command default")
    method: Method = Method.KOSZUL
    output_format: OutputFormat = OutputFormat.TABLE
    output_path: Optional[Path] = None
    seed: int = 0
    assume_pure: bool = False
    workers: int = Field(default=1, ge=1)
    options: Dict[str, Any] = Field(default_factory=dict, description="Command-specific arguments")

    def degree_or(self, default: int) -> int:
        return default if self.degree is None else self.degree
