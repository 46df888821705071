#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Environment Configuration Module
Reads run settings from the environment (and an optional .env file)
"""

import os
from pathlib import Path
from dotenv import load_dotenv

import config
from error_handler import ConfigurationError

# Get the directory containing this file
BASE_DIR = Path(__file__).parent.absolute()

# Load environment variables from .env file
env_path = BASE_DIR / '.env'
load_dotenv(dotenv_path=env_path)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')
SEED_LIMIT = 2 ** 64


class EnvConfig:
    """Typed access to HYPERINT_* environment variables with config.py defaults"""

    def __init__(self):
        self.base_dir = BASE_DIR
        self._validate_env()

    def _validate_env(self):
        """Fail early on malformed values instead of deep inside a run"""
        problems = []
        for var, cast, kind in (('HYPERINT_TOL', float, 'number'),
                                ('HYPERINT_SEED', _parse_int, 'integer'),
                                ('HYPERINT_JOBS', int, 'integer'),
                                ('HYPERINT_RANDOM_CASES', int, 'integer')):
            raw = os.getenv(var)
            if raw is None or raw == '':
                continue
            try:
                value = cast(raw)
            except ValueError:
                problems.append(f"{var}={raw!r} is not a valid {kind}")
                continue
            if var == 'HYPERINT_TOL' and not value > 0:
                problems.append(f"{var} must be positive")
            if var == 'HYPERINT_SEED' and not 0 <= value < SEED_LIMIT:
                problems.append(f"{var}={raw!r} must fit in 64 bits (0 to 2**64 - 1)")
            if var in ('HYPERINT_JOBS',) and value < 1:
                problems.append(f"{var} must be at least 1")
            if var == 'HYPERINT_RANDOM_CASES' and value < 0:
                problems.append(f"{var} must be non-negative")

        level = os.getenv('HYPERINT_LOG_LEVEL')
        if level and level.upper() not in LOG_LEVELS:
            problems.append(f"HYPERINT_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")

        if problems:
            raise ConfigurationError(
                "Invalid environment configuration:\n  " + "\n  ".join(problems)
                + "\nSee .env.example for the accepted variables"
            )

    @property
    def tolerance(self):
        """Relative tolerance for closed form vs quadrature agreement"""
        return float(os.getenv('HYPERINT_TOL') or config.DEFAULT_TOL)

    @property
    def seed(self):
        """Seed for random property cases"""
        raw = os.getenv('HYPERINT_SEED')
        return _parse_int(raw) if raw else config.DEFAULT_SEED

    @property
    def jobs(self):
        """Worker processes used by the suite runner"""
        return int(os.getenv('HYPERINT_JOBS') or config.DEFAULT_JOBS)

    @property
    def random_cases(self):
        """Number of random property cases appended to a suite"""
        return int(os.getenv('HYPERINT_RANDOM_CASES') or config.DEFAULT_RANDOM_CASES)

    @property
    def log_level(self):
        return (os.getenv('HYPERINT_LOG_LEVEL') or 'INFO').upper()

    def get_log_dir(self):
        """Get log files directory path"""
        raw = os.getenv('HYPERINT_LOG_DIR')
        return self._resolve(raw) if raw else self.base_dir / 'logs'

    def get_corpus_path(self):
        """Get default corpus path"""
        raw = os.getenv('HYPERINT_CORPUS')
        return self._resolve(raw) if raw else self.base_dir / config.DEFAULT_CORPUS

    def _resolve(self, raw):
        """Relative paths are taken from the project directory"""
        path = Path(raw)
        return path if path.is_absolute() else self.base_dir / path


def _parse_int(raw):
    """Integers may be written in decimal or with a 0x prefix"""
    return int(raw, 0)


# Create a singleton instance
_env_config = None

def get_env_config():
    """Get the environment config singleton instance"""
    global _env_config
    if _env_config is None:
        _env_config = EnvConfig()
    return _env_config


def reset_env_config():
    """Drop the cached instance so the next call re-reads the environment"""
    global _env_config
    _env_config = None
