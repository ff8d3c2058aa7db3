"""
Pytest configuration and shared fixtures.
"""

import json
import os
import tempfile
from pathlib import Path
from unittest.mock import Mock

import pytest

from src.steencalc.arith import FqField, PrimeModulus
from src.steencalc.config import Config
from src.steencalc.report_log import ReportLog
from src.steencalc.suites.suite_base import CaseFailure, SuiteReport, SuiteSettings

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    """Directory holding the JSON input files."""
    return FIXTURES


@pytest.fixture
def temp_db():
    """Create a temporary database file."""
    with tempfile.NamedTemporaryFile(suffix=".db", delete=False) as f:
        db_path = f.name
    yield db_path
    # Cleanup
    if os.path.exists(db_path):
        os.unlink(db_path)


@pytest.fixture
def temp_config_file():
    """Create a temporary configuration file."""
    config_data = {
        "seed": 11,
        "workers": 1,
        "log_level": "info",
        "random_cases": 3,
        "cartan_pairs": 4,
        "milnor_pairs": 5,
        "fiber_pairs": 6,
        "max_failures": 2,
    }

    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        import yaml

        yaml.dump(config_data, f)
        config_path = f.name

    yield config_path
    os.unlink(config_path)


@pytest.fixture
def temp_json():
    """Write a JSON document to a temporary file; returns a writer."""
    paths = []

    def write(data):
        with tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False) as f:
            if isinstance(data, str):
                f.write(data)
            else:
                json.dump(data, f)
            paths.append(f.name)
        return f.name

    yield write
    for path in paths:
        os.unlink(path)


@pytest.fixture
def mock_config():
    """Create a mock configuration object with small case counts."""
    config = Mock(spec=Config)
    config.seed = 0
    config.workers = 1
    config.log_level = "WARNING"
    config.report_db = ""
    config.random_cases = 2
    config.cartan_pairs = 2
    config.milnor_pairs = 3
    config.fiber_pairs = 3
    config.max_failures = 10
    return config


@pytest.fixture
def small_settings():
    """Suite settings small enough for unit tests."""
    return SuiteSettings(random_cases=2, cartan_pairs=2, milnor_pairs=3, fiber_pairs=3)


@pytest.fixture
def report_log(temp_db):
    """Create a real ReportLog instance for testing."""
    return ReportLog(temp_db)


@pytest.fixture
def sample_report():
    """A failing suite report."""
    return SuiteReport(
        suite="pthpower",
        seed=7,
        cases=12,
        failures=[CaseFailure(3, "P2 p=3", "S^0 = id", {"delta": "h"})],
        failure_count=1,
        wall_time=0.25,
    )


@pytest.fixture
def mod2():
    return PrimeModulus(2)


@pytest.fixture
def mod3():
    return PrimeModulus(3)


@pytest.fixture
def f7():
    return FqField(7)


@pytest.fixture(autouse=True)
def clean_environment():
    """Clean environment variables before each test."""
    # Store original values
    original_env = {}
    env_vars = ["STEENCALC_SEED", "STEENCALC_CONFIG_FILE"]

    for var in env_vars:
        if var in os.environ:
            original_env[var] = os.environ[var]
            del os.environ[var]

    yield

    # Restore original values
    for var, value in original_env.items():
        os.environ[var] = value


# Markers for different test types
def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "unit: marks tests as unit tests")
    config.addinivalue_line("markers", "integration: marks tests as integration tests")
    config.addinivalue_line("markers", "e2e: marks tests as end-to-end tests")
    config.addinivalue_line("markers", "slow: marks tests as slow running")
