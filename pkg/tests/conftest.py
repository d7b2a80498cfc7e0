import pytest

from beauville import (CosetGroup, construct_P, enumerate_cosets,
                       gamma_quotient_presentation, series_quotient_group,
                       verify_main_theorem)


@pytest.fixture(scope="session")
def H31():
    """The smallest main-theorem group: weight-4 quotient at p = 3, order 243."""
    pres = gamma_quotient_presentation(3, 3)
    table = enumerate_cosets(pres)
    return CosetGroup(table, presentation=pres)


@pytest.fixture(scope="session")
def N6():
    """The Nottingham quotient N/N_6 at p = 3, order 243."""
    return series_quotient_group(3, 6)


@pytest.fixture(scope="session")
def P33():
    """The maximal-class group of order 81 (p = 3, i = 3)."""
    return construct_P(3, 3)


@pytest.fixture(scope="session")
def cert31():
    return verify_main_theorem(3, 1)
