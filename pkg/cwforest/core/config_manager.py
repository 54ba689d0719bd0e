"""
Resource caps and the JSON file they can be stored in.

Precedence, lowest first: built-in defaults, the JSON config file,
``CWFOREST_*`` environment variables (a ``.env`` file is honoured), and
explicit overrides from the command line.
"""

import json
import os
from typing import Any, Dict

from dotenv import find_dotenv, load_dotenv
from loguru import logger
from pydantic import BaseModel, Field, ValidationError

CONFIG_FILE = "cwforest_config.json"
ENV_PREFIX = "CWFOREST_"


def _default_workers() -> int:
    return max(1, (os.cpu_count() or 4) // 2)


class ResourceLimits(BaseModel):
    """Caps guarding row sweeps, height sweeps and word enumeration."""

    max_depth: int = Field(default=24, ge=0)
    max_height: int = Field(default=100_000, ge=1)
    max_word_length: int = Field(default=20, ge=1)
    workers: int = Field(default_factory=_default_workers, ge=1)


DEFAULT_LIMITS = ResourceLimits()


class ConfigManager:
    """
    Key-value settings backed by a JSON file, resolved into ResourceLimits.

    A missing or unreadable file counts as empty; problems are logged, not raised.
    """

    def __init__(self, config_file: str = CONFIG_FILE, use_env: bool = True):
        self.config_file = config_file
        self.use_env = use_env
        self.config: Dict[str, Any] = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        if not os.path.exists(self.config_file):
            return {}
        try:
            with open(self.config_file, "r", encoding="utf-8") as f:
                loaded = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Could not read {self.config_file}: {e}")
            return {}
        if not isinstance(loaded, dict):
            logger.error(f"{self.config_file} does not hold a JSON object; ignoring it")
            return {}
        return loaded

    def save_config(self) -> bool:
        """Write the current settings back to ``config_file``."""
        try:
            with open(self.config_file, "w", encoding="utf-8") as f:
                json.dump(self.config, f, indent=4)
        except OSError as e:
            logger.error(f"Could not write {self.config_file}: {e}")
            return False
        return True

    def get(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)

    def set(self, key: str, value: Any) -> bool:
        self.config[key] = value
        return True

    def update(self, new_values: Dict[str, Any]) -> bool:
        self.config.update(new_values)
        return True

    def _env_overrides(self) -> Dict[str, int]:
        load_dotenv(find_dotenv(usecwd=True))
        overrides: Dict[str, int] = {}
        for name in ResourceLimits.model_fields:
            variable = ENV_PREFIX + name.upper()
            raw = os.getenv(variable)
            if raw is None:
                continue
            try:
                overrides[name] = int(raw)
            except ValueError:
                logger.warning(f"Ignoring {variable}={raw!r}: not an integer")
        return overrides

    def limits(self, **overrides: Any) -> ResourceLimits:
        """
        Resolve the effective resource caps.

        Args:
            **overrides: Highest-priority values; None entries are skipped

        Returns:
            ResourceLimits with every layer applied

        Raises:
            pydantic.ValidationError: If a layer supplies an out-of-range value
        """
        values = {k: v for k, v in self.config.items() if k in ResourceLimits.model_fields}
        if self.use_env:
            values.update(self._env_overrides())
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return ResourceLimits(**values)
        except ValidationError as e:
            logger.error(f"Invalid resource limits {values}: {e}")
            raise
