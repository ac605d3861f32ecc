"""Kappa calculus, the J-classes, and their pairings with psi monomials."""

from fractions import Fraction

import pytest

from modulitr.errors import DomainError
from modulitr.kappa import (
    integral_j,
    j_class,
    j_class_multiindex,
    kappa_multiindex,
    mixed_integral,
    psi_complements,
    s_constants,
)
from modulitr.correlators import wk_correlator


def test_generating_constants():
    assert s_constants(3) == [Fraction(1), Fraction(-3, 2), Fraction(13, 3)]


def test_j_definitions_agree_through_degree_six():
    for p in range(1, 7):
        assert j_class(p) == j_class_multiindex(p)


def test_j_low_degrees():
    assert j_class(0) == {(): Fraction(1)}
    assert j_class(1) == {(1,): Fraction(1)}
    assert j_class(2) == {(2,): Fraction(-3, 2), (1, 1): Fraction(1, 2)}


def test_kappa_multiindex_base_cases():
    assert kappa_multiindex(()) == {(): Fraction(1)}
    assert kappa_multiindex((3,)) == {(3,): Fraction(1)}
    assert kappa_multiindex((1, 1)) == {(1, 1): Fraction(1), (2,): Fraction(1)}
    with pytest.raises(DomainError):
        kappa_multiindex((0,))


def test_single_kappa_is_one_extra_psi():
    # kappa_b on Mbar_{g,n} pulls back to psi_{n+1}^{b+1} pushed forward
    assert mixed_integral(0, (0, 0, 0, 0), (1,)) == wk_correlator(0, (0, 0, 0, 0, 2))
    assert mixed_integral(1, (), (1,)) == wk_correlator(1, (2,))
    assert mixed_integral(2, (), (3,)) == wk_correlator(2, (4,))


def test_two_kappas_inclusion_exclusion():
    got = mixed_integral(0, (0,) * 5, (1, 1))
    want = wk_correlator(0, (0,) * 5 + (2, 2)) - wk_correlator(0, (0,) * 5 + (3,))
    assert got == want
    assert got == 5


def test_pinned_j_pairings():
    assert integral_j(1, (0,), 1) == Fraction(1, 24)
    assert integral_j(2, (1,), 3) == Fraction(-1, 2880)
    assert integral_j(1, (0, 0), 2) == 0
    total = Fraction(0)
    for mono, c in j_class(2).items():
        total += c * mixed_integral(2, (), mono + (1,))
    assert total == Fraction(7, 5760)


def test_vanishing_pairings_sample():
    # J_p pairs to zero against every complementary monomial once
    # p exceeds 2g - 2 + n (inclusive for n >= 2)
    assert integral_j(2, (0,), 4) == 0
    assert integral_j(2, (0, 1), 4) == 0
    total = Fraction(0)
    for mono, c in j_class(4).items():
        total += c * mixed_integral(2, (0, 0), mono + (1,))
    assert total == 0


def test_psi_complements():
    assert sorted(psi_complements(1, 2, 1)) == [(0, 1)]
    assert sorted(psi_complements(0, 4, 0)) == [(0, 0, 0, 1)]
    assert list(psi_complements(0, 3, 2)) == []
