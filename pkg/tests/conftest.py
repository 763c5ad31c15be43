"""Session-wide fixtures: the spectrum tables shared across test modules.

The large tables are expensive to build, so they are constructed once and
reused by both the unit tests and the acceptance suite.
"""

import pytest

from runnerspec.spectrum import EnumerationSpec, build_spectrum


@pytest.fixture(scope="session")
def table_n2_1e6():
    return build_spectrum(EnumerationSpec(n=2, max_volume_sq=10**6))


@pytest.fixture(scope="session")
def table_n2_1e4():
    return build_spectrum(EnumerationSpec(n=2, max_volume_sq=10**4))


@pytest.fixture(scope="session")
def table_n3_1e3():
    return build_spectrum(EnumerationSpec(n=3, max_volume_sq=10**3))


@pytest.fixture(scope="session")
def table_n3_1e4():
    return build_spectrum(EnumerationSpec(n=3, max_volume_sq=10**4))


@pytest.fixture(scope="session")
def table_n3_4e4():
    return build_spectrum(EnumerationSpec(n=3, max_volume_sq=4 * 10**4))
