"""Shared fixtures: the bundled data archive, loaded once per session."""
from pathlib import Path

import pytest

from corewave.estimators import yoy_log_inflation
from corewave.pipeline.config import load_config
from corewave.pipeline.evaluate import run_evaluation
from corewave.pipeline.io import load_panel_csv, load_series_csv

ARCHIVE = Path(__file__).resolve().parent.parent / "src" / "corewave" / "data"


@pytest.fixture(scope="session")
def archive() -> Path:
    return ARCHIVE


@pytest.fixture(scope="session")
def parent(archive):
    """Parent inflation on the default evaluation window (420 months)."""
    index = load_series_csv(archive / "cpi_index.csv")
    return yoy_log_inflation(index).window((1967, 2), (2002, 1))


@pytest.fixture(scope="session")
def panel(archive):
    return load_panel_csv(archive / "components_panel.csv")


@pytest.fixture(scope="session")
def default_config(archive):
    return load_config(None, archive)


@pytest.fixture(scope="session")
def report(default_config):
    """One full evaluation run, shared by report- and acceptance-level tests."""
    return run_evaluation(default_config)
