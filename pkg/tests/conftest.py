from __future__ import annotations

import pytest

from taguchi_doe import Approach, build_bundle, build_l12, build_response_table
from taguchi_doe.reference import load_reference_metrics, reference_space


@pytest.fixture(scope="session")
def plan():
    return build_l12(reference_space())


@pytest.fixture(scope="session")
def metrics():
    return load_reference_metrics()


@pytest.fixture(scope="session")
def tables(plan, metrics):
    return {
        k: build_response_table(plan, metrics, Approach(id=k))
        for k in (1, 2, 3, 4, 5)
    }


@pytest.fixture(scope="session")
def bundles(plan, metrics):
    return {
        k: build_bundle(plan, metrics, Approach(id=k)) for k in (1, 2, 3, 4, 5)
    }
