from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from riskmcdm import fixtures

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def case_hierarchy_path():
    return fixtures.path("case-hierarchy.json")


@pytest.fixture(scope="session")
def case_weights_path():
    return fixtures.path("case-weights.json")


@pytest.fixture(scope="session")
def case_matrix_path():
    return fixtures.path("case-weighted-matrix.csv")


@pytest.fixture(scope="session")
def case_config_path():
    return fixtures.path("case-config.json")


@pytest.fixture(scope="session")
def synthetic_dir():
    return Path(fixtures.path("synthetic"))


def consistent_matrix(weights):
    """Exactly consistent pairwise matrix a_ij = w_i / w_j."""
    w = np.asarray(weights, dtype=float)
    return w[:, None] / w[None, :]
