"""Acceptance gate: one test per criterion, each a single pass/fail line.

Every criterion is an exact identity (tolerance zero) plus a wall-clock
budget; the budget is asserted alongside the identity.
"""

import time
from fractions import Fraction

from modulitr import checks, tr, spin_gw
from modulitr.cli import main
from modulitr.config import RunConfig
from modulitr.correlators import wk_correlator
from modulitr.kappa import integral_j, j_class, j_class_multiindex, mixed_integral
from modulitr.report import PASS


def run_suite(cfg, suites):
    return checks.run_tasks(checks.build_tasks(cfg, suites), 1)


def assert_all_pass(records):
    bad = [r.to_dict() for r in records if r.status != PASS]
    assert records and not bad, bad[:5]


def test_criterion_01_psi_correlators():
    t0 = time.time()
    assert wk_correlator(0, (0, 0, 0)) == 1
    assert wk_correlator(1, (1,)) == Fraction(1, 24)
    assert wk_correlator(2, (4,)) == Fraction(1, 1152)
    assert wk_correlator(1, (0, 0, 2, 2)) == Fraction(1, 6)
    assert time.time() - t0 < 1


def test_criterion_02_j_definition_equivalence():
    t0 = time.time()
    for p in range(1, 7):
        assert j_class(p) == j_class_multiindex(p), p
    assert time.time() - t0 < 1


def test_criterion_03_vanishing_pairings():
    t0 = time.time()
    records = run_suite(RunConfig(gmax=3, nmax=4), ["main"])
    assert_all_pass(records)
    # the pinned evaluation behind the (1, 2) case:
    # 1/2 * int kappa_1^2 - 3/2 * int kappa_2 = 1/2 * 1/8 - 3/2 * 1/24 = 0
    assert mixed_integral(1, (0, 0), (1, 1)) == Fraction(1, 8)
    assert mixed_integral(1, (0, 0), (2,)) == Fraction(1, 24)
    assert integral_j(1, (0, 0), 2) == 0
    assert time.time() - t0 < 300


def test_criterion_04_pinned_j_values():
    t0 = time.time()
    assert integral_j(1, (0,), 1) == Fraction(1, 24)
    assert integral_j(2, (1,), 3) == Fraction(-1, 2880)
    total = Fraction(0)
    for mono, c in j_class(2).items():
        total += c * mixed_integral(2, (), mono + (1,))
    assert total == Fraction(7, 5760)
    assert time.time() - t0 < 10


def test_criterion_05_edge_function_lemmas():
    t0 = time.time()
    records = run_suite(RunConfig(order=10), ["lemmas"])
    assert_all_pass([r for r in records if r.check == "lemmas-v"])
    assert time.time() - t0 < 30


def test_criterion_06_ancestor_comparison():
    t0 = time.time()
    records = run_suite(RunConfig(gmax=2, nmax=3, kmax=4, dmax=4), ["anc"])
    assert_all_pass([r for r in records if r.check == "anc-compare"])
    assert time.time() - t0 < 600


def test_criterion_07_equivariant_descendant_regularity():
    t0 = time.time()
    records = run_suite(RunConfig(gmax=2, nmax=3, kmax=5), ["lemmas"])
    assert_all_pass([r for r in records if r.check == "lemmas-regularity"])
    assert time.time() - t0 < 600


def test_criterion_08_tr_matches_j_pipeline():
    t0 = time.time()
    records = run_suite(RunConfig(gmax=2, nmax=4, kmax=6, order=8), ["tr"])
    assert_all_pass([r for r in records if r.check in ("tr-spin", "tr-02")])
    # the pinned three-point value
    engine = tr.TREngine(tr.build_spin_curve())
    assert tr.expand_descendants(engine, 0, 3, 0)[(0, 0, 0)] == {1: Fraction(-1)}
    assert time.time() - t0 < 600


def test_criterion_09_curve_doubling():
    t0 = time.time()
    spin = tr.TREngine(tr.build_spin_curve())
    kn = tr.TREngine(tr.build_kn_curve())
    for g, n in [(0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (1, 3), (2, 1)]:
        assert spin.omega(g, n) == tr.doubled_kn_omega(kn, g, n), (g, n)
    assert time.time() - t0 < 120


def test_criterion_10_check_all_determinism(tmp_path):
    outs = []
    for jobs in ("1", "3"):
        path = tmp_path / f"r{jobs}.json"
        code = main(
            [
                "check-all",
                "--gmax",
                "1",
                "--nmax",
                "3",
                "--kmax",
                "3",
                "--dmax",
                "2",
                "--order",
                "6",
                "--jobs",
                jobs,
                "--out",
                str(path),
            ]
        )
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
