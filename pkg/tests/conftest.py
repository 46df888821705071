"""Shared fixtures for the hyperint test suite"""

import json

import mpmath
import numpy as np
import pytest

from env_config import reset_env_config


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(autouse=True)
def _mp_precision():
    with mpmath.workdps(30):
        yield


@pytest.fixture
def fresh_env(monkeypatch):
    """Environment config rebuilt from a clean HYPERINT_* environment"""
    for var in ('HYPERINT_TOL', 'HYPERINT_SEED', 'HYPERINT_JOBS', 'HYPERINT_RANDOM_CASES',
                'HYPERINT_LOG_DIR', 'HYPERINT_LOG_LEVEL', 'HYPERINT_CORPUS'):
        monkeypatch.delenv(var, raising=False)
    reset_env_config()
    yield monkeypatch
    reset_env_config()


@pytest.fixture
def write_corpus(tmp_path):
    """Write a list of case dicts to a JSON corpus file and return its path"""
    def _write(cases, name='corpus.json'):
        path = tmp_path / name
        path.write_text(json.dumps(cases), encoding='utf-8')
        return path
    return _write
