"""One-point Hodge integrals and the external table format."""

from fractions import Fraction

import pytest

from modulitr.errors import CacheFormatError, HodgeUnsupportedError
from modulitr.hodge import (
    HODGE_HEADER,
    HodgeTable,
    bernoulli,
    hodge_one_point,
    load_hodge_table,
)


def test_bernoulli_numbers():
    # B_1 = +1/2 convention
    assert [bernoulli(n) for n in range(7)] == [
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 6),
        Fraction(0),
        Fraction(-1, 30),
        Fraction(0),
        Fraction(1, 42),
    ]


def test_top_lambda_family():
    # int psi^{2g-2} lambda_g over Mbar_{g,1}
    assert hodge_one_point(1, 0, 0) == Fraction(1, 24)
    assert hodge_one_point(2, 0, 2) == Fraction(7, 5760)
    assert hodge_one_point(3, 0, 4) == Fraction(31, 967680)


def test_subtop_family():
    # int psi^{g-1} lambda_g lambda_{g-1} over Mbar_{g,1}
    assert hodge_one_point(1, 0, 0) == Fraction(1, 24)
    assert hodge_one_point(2, 1, 1) == Fraction(1, 2880)
    assert hodge_one_point(3, 2, 2) == Fraction(1, 120960)


def test_vanishing_branches():
    # a > g is empty, a = g kills the square of the top class, and
    # off-dimension queries pair classes of wrong degree
    assert hodge_one_point(2, 3, 1) == 0
    assert hodge_one_point(2, 2, 1) == 0
    assert hodge_one_point(2, 1, 4) == 0


def test_unsupported_raises():
    with pytest.raises(HodgeUnsupportedError):
        hodge_one_point(3, 1, 3)


def test_table_supplies_missing_values(tmp_path):
    path = tmp_path / "h.table"
    path.write_text(HODGE_HEADER + "\n3;1;3;5/7\n")
    table = load_hodge_table(path)
    assert hodge_one_point(3, 1, 3, table) == Fraction(5, 7)
    # closed-form values still come from the formulas
    assert hodge_one_point(2, 0, 2, table) == Fraction(7, 5760)


def test_table_rejects_bad_header(tmp_path):
    path = tmp_path / "h.table"
    path.write_text("wrong\n")
    with pytest.raises(CacheFormatError):
        load_hodge_table(path)


def test_default_table_is_formula_only():
    assert isinstance(HodgeTable(), HodgeTable)
    with pytest.raises(HodgeUnsupportedError):
        HodgeTable().value(4, 2, 4)
