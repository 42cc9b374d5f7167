# utils/config.py
"""
RunConfig assembly: built-in defaults < environment (.env) < JSON config file < flags.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import load_dotenv

from pydantic_schemas.run_config import RunConfig

logger = logging.getLogger(__name__)

# Load environment variables from a .env file if present
load_dotenv()

ENV_KEYS = {
    "WEYLSERIES_K": "K",
    "WEYLSERIES_FORMAT": "format",
    "WEYLSERIES_N": "N",
}


def environment_overrides(environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    environ = os.environ if environ is None else environ
    overrides = {}
    for variable, field in ENV_KEYS.items():
        value = environ.get(variable)
        if value not in (None, ""):
            overrides[field] = value
    return overrides


def read_config_file(path: Optional[Path]) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        logger.error(f"Could not read config file {path}: {exc}")
        raise ValueError(f"could not read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return data


def load_run_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_path: Optional[Path] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """Merge the layers and validate once; flags set to None do not override."""
    merged: Dict[str, Any] = {}
    merged.update(environment_overrides(environ))
    merged.update(read_config_file(config_path))
    merged.update({key: value for key, value in (flags or {}).items() if value is not None})
    return RunConfig.model_validate(merged)
