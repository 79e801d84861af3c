import copy
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from src.utils.errors import ConfigError

REQUIRED_SECTIONS = [
    "system",
    "logging",
    "tolerances",
    "numerical_radius",
    "sphere",
    "fitting",
    "ledger",
    "sweep",
]

DEFAULT_CONFIG: Dict[str, Any] = {
    "system": {
        "name": "normal-radius-certify",
        "version": "0.1.0",
    },
    "logging": {
        "level": "INFO",
        "json": False,
        "file": None,
    },
    "tolerances": {
        "hermitian": 1e-10,
        "normality": 1e-10,
        "psd": 1e-10,
        "slack": 1e-7,
        "vector": 1e-12,
        "unit_modulus": 1e-12,
    },
    "numerical_radius": {
        "tol": 1e-9,
        "initial_grid": 512,
        "max_points": 2 ** 20,
    },
    "sphere": {
        "delta_restarts": 4,
        "descent_max_iter": 200,
        "descent_step_tol": 1e-12,
        "mu_tol": 1e-12,
        "seed": 0,
    },
    "fitting": {
        "grid_points": 33,
        "simplex_xatol": 1e-14,
        "simplex_fatol": 1e-16,
        "simplex_maxiter": 4000,
        "lambda_floor": 1e-6,
    },
    "ledger": {
        "workers": 4,
    },
    "sweep": {
        "workers": 4,
        "rhos": [0.5, 1.0, 2.0],
        "kind": "normal",
        "vector_trials": 0,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load configuration, layering a YAML file over the built-in defaults.

    Args:
        config_path: Path to a YAML file; falls back to $CERTIFY_CONFIG, and to
            the defaults alone when neither is given

    Returns:
        Dict containing configuration settings

    Raises:
        FileNotFoundError: If the config file doesn't exist
        yaml.YAMLError: If the config file is invalid
        ConfigError: If the root is not a mapping or required sections are missing
    """
    if config_path is None:
        config_path = get_config_path()

    config = copy.deepcopy(DEFAULT_CONFIG)

    if config_path is not None:
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        try:
            with open(config_path, "r") as f:
                overrides = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise yaml.YAMLError(f"Failed to parse configuration file: {str(e)}")

        if not isinstance(overrides, dict):
            raise ConfigError(f"Configuration root must be a mapping: {config_path}")
        config = _deep_merge(config, overrides)

    missing_sections = [
        section for section in REQUIRED_SECTIONS if not isinstance(config.get(section), dict)
    ]
    if missing_sections:
        raise ConfigError(
            f"Missing required configuration sections: {', '.join(missing_sections)}"
        )

    return config


def get_config_path() -> Optional[Path]:
    """Get the path to the configuration file, if one is set in the environment."""
    env_path = os.getenv("CERTIFY_CONFIG")
    return Path(env_path) if env_path else None
