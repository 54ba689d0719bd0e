import os
import sys

import pytest

# Add the repository root to the path so `cwforest` imports without installing
repo_root = os.path.join(os.path.dirname(__file__), "..", "..")
sys.path.insert(0, os.path.abspath(repo_root))

from cwforest.tests.golden import REFERENCE_CONFIGS  # noqa: E402


@pytest.fixture
def isolated_env(monkeypatch, tmp_path):
    """Keep CWFOREST_* variables and stray config files out of every test."""
    for name in list(os.environ):
        if name.startswith("CWFOREST_"):
            monkeypatch.delenv(name)
    monkeypatch.chdir(tmp_path)
    yield


@pytest.fixture(params=REFERENCE_CONFIGS, ids=lambda cfg: f"u{cfg.u}v{cfg.v}")
def reference_config(request):
    return request.param


def pytest_configure(config):
    config.addinivalue_line("markers", "unit: mark test as a unit test")
    config.addinivalue_line("markers", "integration: mark test as an integration test")
    config.addinivalue_line("markers", "slow: mark test as slow")
