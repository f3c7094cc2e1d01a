import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("lrtwist", deadline=None, max_examples=40, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lrtwist")


@pytest.fixture(scope="session")
def catalog():
    from lrtwist.catalog import load_catalog
    return load_catalog()
