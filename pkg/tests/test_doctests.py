"""Run the docstring examples embedded in the library modules."""

import doctest

import pytest

from modulitr import (
    correlators,
    hodge,
    kappa,
    laurent,
    report,
    series,
    spin_gw,
    tr,
)

MODULES = [correlators, hodge, kappa, laurent, report, series, spin_gw, tr]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
