from PLIM.utils.parsing import parse_field_spec

import pytest


@pytest.fixture(scope='session')
def golden():
    return parse_field_spec('multinacci(2)')


@pytest.fixture(scope='session')
def tribonacci():
    return parse_field_spec('multinacci(3)')


@pytest.fixture(scope='session')
def tetrabonacci():
    return parse_field_spec('multinacci(4)')


@pytest.fixture(scope='session')
def multinacci():
    """ Fields of degree 2, 3 and 4 keyed by N. """
    return {n: parse_field_spec(f'multinacci({n})') for n in (2, 3, 4)}
