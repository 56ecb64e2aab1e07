"""Application configuration module"""

import configparser
import logging
import os
from typing import Any, Dict, Optional

from .constants import (
    APP_NAME,
    CONFIG_FILENAME,
    CONFIG_SECTION,
    DEFAULT_COEFF_BOUND,
    DEFAULT_MAX_WORD_LEN,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_WORKERS,
    LOG_FILENAME,
    MAX_COEFF_BOUND,
    MAX_TRIALS,
    MAX_WORD_LEN,
    MAX_WORKERS,
)
from .rings import parse_ring_spec

HOME = os.path.expanduser("~")
# XDG Base Directory locations
XDG_CONFIG_HOME = os.environ.get("XDG_CONFIG_HOME", os.path.join(HOME, ".config"))
XDG_CACHE_HOME = os.environ.get("XDG_CACHE_HOME", os.path.join(HOME, ".cache"))
CONFIG_DIR = os.path.join(XDG_CONFIG_HOME, APP_NAME)
CONFIG_FILE = os.path.join(CONFIG_DIR, CONFIG_FILENAME)
CACHE_DIR = os.path.join(XDG_CACHE_HOME, APP_NAME)
LOG_FILE = os.path.join(CACHE_DIR, LOG_FILENAME)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

DEFAULT_CONFIG: Dict[str, Any] = {
    "ring": "z",
    "trials": DEFAULT_TRIALS,
    "max_word_len": DEFAULT_MAX_WORD_LEN,
    "seed": DEFAULT_SEED,
    "coeff_bound": DEFAULT_COEFF_BOUND,
    "workers": DEFAULT_WORKERS,
    "log_level": "INFO",
    "log_file": LOG_FILE,
}

CONFIG_TYPES = {
    "ring": str,
    "trials": int,
    "max_word_len": int,
    "seed": int,
    "coeff_bound": int,
    "workers": int,
    "log_level": str,
    "log_file": str,
}

CONFIG_COMMENTS = {
    "ring": "Default coefficient ring (z, q, zmod:<m>, gf:<p>, zi)",
    "trials": f"Random words per presentation check (1-{MAX_TRIALS})",
    "max_word_len": f"Maximum random word length (0-{MAX_WORD_LEN})",
    "seed": "Seed for randomized verification",
    "coeff_bound": f"Coefficient range [-b, b] for random polynomials (1-{MAX_COEFF_BOUND})",
    "workers": f"Threads used by sweeps (1-{MAX_WORKERS})",
    "log_level": "Log level (DEBUG, INFO, WARNING, ERROR)",
    "log_file": "Log file path",
}

CONFIG_VALIDATORS = {
    "ring": {"type": str, "default": "z"},
    "trials": {"type": int, "min": 1, "max": MAX_TRIALS, "default": DEFAULT_TRIALS},
    "max_word_len": {"type": int, "min": 0, "max": MAX_WORD_LEN, "default": DEFAULT_MAX_WORD_LEN},
    "seed": {"type": int, "default": DEFAULT_SEED},
    "coeff_bound": {"type": int, "min": 1, "max": MAX_COEFF_BOUND, "default": DEFAULT_COEFF_BOUND},
    "workers": {"type": int, "min": 1, "max": MAX_WORKERS, "default": DEFAULT_WORKERS},
    "log_level": {"type": str, "choices": LOG_LEVELS, "default": "INFO"},
    "log_file": {"type": str, "default": LOG_FILE},
}


def get_default_config() -> Dict[str, Any]:
    """Returns a copy of the default configuration."""
    return DEFAULT_CONFIG.copy()


def ensure_config_dir(path: Optional[str] = None) -> None:
    """Create the configuration directory if it doesn't exist."""
    os.makedirs(os.path.dirname(path) if path else CONFIG_DIR, exist_ok=True)


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Load configuration from file using configparser.

    The default file is created with commented defaults when missing; an
    explicit ``path`` that does not exist just yields the defaults.
    """
    config_file = path or CONFIG_FILE

    if not os.path.exists(config_file):
        if path is None:
            try:
                save_config(DEFAULT_CONFIG)
            except OSError as e:
                logging.warning(f"Could not create config file: {e}")
        else:
            logging.warning(f"Config file not found: {config_file}")
        return get_default_config()

    config = get_default_config()

    try:
        parser = configparser.ConfigParser()
        parser.read(config_file)

        if parser.has_section(CONFIG_SECTION):
            for key in CONFIG_TYPES:
                if parser.has_option(CONFIG_SECTION, key):
                    config[key] = parser.get(CONFIG_SECTION, key)

    except (configparser.Error, IOError, OSError) as e:
        logging.warning(f"Error reading config file: {e}")
        return get_default_config()

    return validate_config(config)


def save_config(config: Dict[str, Any], path: Optional[str] = None) -> None:
    """Save configuration to file using configparser."""
    config_file = path or CONFIG_FILE
    ensure_config_dir(config_file)

    parser = configparser.ConfigParser()
    parser.add_section(CONFIG_SECTION)

    for key, value in config.items():
        parser.set(CONFIG_SECTION, key, str(value))

    with open(config_file, "w") as f:
        f.write("# Configuration file for companion-algebra\n")
        f.write("#\n")
        for key, comment in CONFIG_COMMENTS.items():
            f.write(f"# {key}: {comment}\n")
        f.write("#\n")
        parser.write(f)


def validate_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate configuration values with type conversion and range clamping.

    Args:
        config: Configuration dictionary to validate

    Returns:
        Validated configuration dictionary; invalid entries fall back to defaults
    """
    validated = get_default_config()

    for key, default_value in DEFAULT_CONFIG.items():
        if key not in config:
            continue

        value = config[key]
        validator = CONFIG_VALIDATORS[key]

        try:
            if validator["type"] == int:
                if isinstance(value, int) and not isinstance(value, bool):
                    int_value = value
                elif isinstance(value, str):
                    int_value = int(value.strip())
                else:
                    raise TypeError(f"{key} must be an integer")

                min_val = validator.get("min")
                max_val = validator.get("max")
                if min_val is not None and int_value < min_val:
                    int_value = min_val
                if max_val is not None and int_value > max_val:
                    int_value = max_val

                validated[key] = int_value

            else:
                sanitized = str(value).strip()
                if key == "ring":
                    parse_ring_spec(sanitized)
                elif key == "log_level":
                    sanitized = sanitized.upper()
                    if sanitized not in validator["choices"]:
                        raise ValueError(f"unknown log level {sanitized}")
                validated[key] = sanitized

        except (ValueError, TypeError) as e:
            logging.warning(f"Invalid config value for {key}: {e}; using {default_value}")
            validated[key] = validator.get("default", default_value)

    return validated
