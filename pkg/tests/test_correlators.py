"""Psi intersection numbers: pinned values, closed-form oracles, cache."""

import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modulitr.correlators import (
    CACHE_HEADER,
    CorrelatorTable,
    dilaton_reduce,
    double_factorial,
    string_reduce,
    wk_correlator,
)
from modulitr.errors import CacheFormatError, DomainError


def test_pinned_values():
    assert wk_correlator(0, (0, 0, 0)) == 1
    assert wk_correlator(1, (1,)) == Fraction(1, 24)
    assert wk_correlator(2, (4,)) == Fraction(1, 1152)
    assert wk_correlator(1, (0, 0, 2, 2)) == Fraction(1, 6)


def test_more_known_values():
    assert wk_correlator(2, (0, 5)) == Fraction(1, 1152)
    assert wk_correlator(1, (0, 2)) == Fraction(1, 24)
    assert wk_correlator(3, (7,)) == Fraction(1, 82944)
    assert wk_correlator(2, (2, 3)) == Fraction(29, 5760)


def genus0_closed_form(ks):
    # <tau_{k_1} ... tau_{k_n}>_0 = (n - 3)! / prod k_i!
    n = len(ks)
    out = Fraction(math.factorial(n - 3))
    for k in ks:
        out /= math.factorial(k)
    return out


@given(st.lists(st.integers(min_value=0, max_value=6), min_size=3, max_size=7))
@settings(max_examples=60, deadline=None)
def test_genus0_oracle(ks):
    ks = tuple(ks)
    n = len(ks)
    if sum(ks) != n - 3:
        assert wk_correlator(0, ks) == 0
    else:
        assert wk_correlator(0, ks) == genus0_closed_form(ks)


def test_genus1_one_point_family():
    # <tau_{3g-2}>_g = 1 / (24^g g!) at g = 1, 2, 3
    for g in (1, 2, 3):
        assert wk_correlator(g, (3 * g - 2,)) == Fraction(
            1, 24**g * math.factorial(g)
        )


def test_off_shell_is_zero():
    assert wk_correlator(1, (5, 5)) == 0
    assert wk_correlator(0, (1, 1, 1)) == 0


def test_unstable_raises():
    with pytest.raises(DomainError):
        wk_correlator(0, (0, 0))
    with pytest.raises(DomainError):
        wk_correlator(1, ())
    with pytest.raises(DomainError):
        wk_correlator(0, (-1, 0, 0, 4))


def test_string_equation_consistency():
    table = CorrelatorTable()
    for g, ks in [(1, (0, 2)), (2, (0, 5)), (1, (0, 1, 1, 1))]:
        direct = table.correlator(g, ks)
        total = sum(
            (c * table.correlator(*key) for key, c in string_reduce(g, ks)),
            Fraction(0),
        )
        assert direct == total


def test_dilaton_equation_consistency():
    key, c = dilaton_reduce(1, (1, 1))
    assert c * CorrelatorTable().correlator(*key) == wk_correlator(1, (1, 1))


def test_double_factorial():
    assert [double_factorial(n) for n in (-1, 0, 1, 3, 5, 7)] == [
        1,
        1,
        1,
        3,
        15,
        105,
    ]


def test_cache_roundtrip(tmp_path):
    table = CorrelatorTable()
    table.correlator(2, (4,))
    path = tmp_path / "wk.cache"
    table.save(path)
    assert path.read_text().splitlines()[0] == CACHE_HEADER
    loaded = CorrelatorTable.load(path)
    assert loaded.items() == table.items()


def test_cache_rejects_garbage(tmp_path):
    path = tmp_path / "bad.cache"
    path.write_text("not a cache\n")
    with pytest.raises(CacheFormatError):
        CorrelatorTable.load(path)
    path.write_text(CACHE_HEADER + "\n1;2;3;4\n")
    with pytest.raises(CacheFormatError):
        CorrelatorTable.load(path)


def test_merge():
    a = CorrelatorTable()
    b = CorrelatorTable()
    b.correlator(2, (4,))
    a.merge(b)
    assert (2, (4,)) in dict(a.items())


def test_concurrent_fill_matches_serial():
    serial = CorrelatorTable()
    want = {ks: serial.correlator(2, ks) for ks in [(4,), (0, 5), (2, 3), (1, 4)]}
    shared = CorrelatorTable()
    results = {}

    def worker(ks):
        results[ks] = shared.correlator(2, ks)

    threads = [threading.Thread(target=worker, args=(ks,)) for ks in want]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == want
