"""Verification suites run by the command-line harness.

Each suite builds a list of independent tasks; a task is a callable
returning a list of :class:`~modulitr.report.CheckRecord`.  Tasks may run
on a thread pool; results are sorted before serialization, so reports are
byte-identical for any job count.

Suites and what they verify:

* ``main``: pairings of the J-classes ``J_p`` against every complementary
  mixed psi/kappa monomial vanish for ``p`` between ``2g-2+n``
  (exclusive; inclusive when ``n >= 2``) and the dimension ``3g-3+n``.
* ``n10``: the one- and zero-marked-point exceptional values of
  ``J_{2g-1}`` and ``J_{2g-2}`` against the one-point Hodge oracle.
* ``lemmas-*``: closed forms, regularity, homogeneity and Lambert-series
  identities of the edge functions V_k and V_{k,l}; monomiality of the
  equivariant descendants; the ``[T^0 S^d]`` coefficient identity.
* ``anc-*``: the T -> 0 values of the shift series, and the equality of
  localization ancestors with shifted Kontsevich-Witten ancestors per
  Q-degree.
* ``tr-*``: topological recursion against the J-pipeline (including the
  unstable (0,2) closed form and the pinned (0,3) value), and the
  doubling relation between the two spectral curves.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import spin_gw, tr
from .config import RunConfig
from .correlators import CorrelatorTable, default_table
from .errors import HodgeUnsupportedError
from .hodge import HodgeTable, hodge_one_point, load_hodge_table
from .kappa import (
    _bounded_sorted_tuples,
    _partitions,
    j_class,
    mixed_integral,
    integral_j,
)
from .laurent import LaurentTS, monomial
from .report import FAIL, PASS, SKIP, CheckRecord, frac_str, qpoly_str, tpoly_str

WK_CACHE_NAME = "wk.cache"

ALL_SUITES = ("main", "n10", "lemmas", "anc", "tr")

_factorial = spin_gw._factorial


def _record(check, params, expected, actual) -> CheckRecord:
    if expected == actual:
        return CheckRecord(check, params, PASS, expected=str(expected))
    return CheckRecord(
        check, params, FAIL, expected=str(expected), actual=str(actual)
    )


def _skip(check, params, reason) -> CheckRecord:
    return CheckRecord(check, params, SKIP, skip_reason=str(reason))


# ---------------------------------------------------------------------------
# main: vanishing pairings of J_p
# ---------------------------------------------------------------------------


def integral_j_mixed(g, psi_ks, kappa_bs, p) -> Fraction:
    """``int J_p prod psi^{k_i} prod kappa_{b_j}`` (exact)."""
    total = Fraction(0)
    for mono, c in j_class(p).items():
        total += c * mixed_integral(g, psi_ks, tuple(mono) + tuple(kappa_bs))
    return total


def _complementary_monomials(n, degree):
    """All (psi exponents, kappa indices) with total degree ``degree``."""
    for a in range(degree + 1):
        for psi in _bounded_sorted_tuples(n, a):
            for kappa in _partitions(degree - a):
                yield psi, tuple(sorted(kappa))


def tasks_main(cfg: RunConfig):
    tasks = []
    for g in range(0, cfg.gmax + 1):
        for n in range(0, cfg.nmax + 1):
            if 2 * g - 2 + n <= 0:
                continue
            dim = 3 * g - 3 + n
            ps = list(range(2 * g - 2 + n + 1, dim + 1))
            if n >= 2:
                ps.insert(0, 2 * g - 2 + n)
            for p in ps:
                def thunk(g=g, n=n, p=p):
                    degree = 3 * g - 3 + n - p
                    monomials = (
                        list(_complementary_monomials(n, degree))
                        if degree >= 0
                        else [((0,) * n, ())]
                    )
                    recs = []
                    for psi, kappa in monomials:
                        val = integral_j_mixed(g, psi, kappa, p)
                        recs.append(
                            _record(
                                "main",
                                {
                                    "g": g,
                                    "n": n,
                                    "p": p,
                                    "k": list(psi),
                                    "kappa": list(kappa),
                                },
                                "0/1",
                                frac_str(val),
                            )
                        )
                    return recs

                tasks.append(thunk)
    return tasks


# ---------------------------------------------------------------------------
# n10: the exceptional n <= 1 values against the Hodge oracle
# ---------------------------------------------------------------------------


def tasks_n10(cfg: RunConfig, hodge: HodgeTable | None):
    tasks = []
    for g in range(1, cfg.gmax + 1):
        def one_point(g=g):
            params = {"g": g, "n": 1, "p": 2 * g - 1, "k": [g - 1]}
            try:
                expected = Fraction((-1) ** (g - 1)) * hodge_one_point(
                    g, g - 1, g - 1, hodge
                )
            except HodgeUnsupportedError as exc:
                return [_skip("n10", params, exc)]
            actual = integral_j(g, (g - 1,) , 2 * g - 1)
            return [_record("n10", params, frac_str(expected), frac_str(actual))]

        tasks.append(one_point)
        if g < 2:
            continue

        def zero_point(g=g):
            params = {"g": g, "n": 0, "p": 2 * g - 2, "kappa": [g - 1]}
            try:
                expected = Fraction((-1) ** (g - 2)) * hodge_one_point(
                    g, g - 2, g, hodge
                )
            except HodgeUnsupportedError as exc:
                return [_skip("n10", params, exc)]
            actual = integral_j_mixed(g, (), (g - 1,), 2 * g - 2)
            return [_record("n10", params, frac_str(expected), frac_str(actual))]

        tasks.append(zero_point)
    return tasks


# ---------------------------------------------------------------------------
# lemmas: V-functions, descendant monomiality, [T^0 S^d]
# ---------------------------------------------------------------------------


def tasks_lemmas_v(cfg: RunConfig):
    order = cfg.order

    def closed_forms():
        recs = []
        v1 = LaurentTS({(0, -1): 1, (-1, 0): -1})
        recs.append(
            _record("lemmas-v", {"name": "V1"}, repr(v1), repr(spin_gw.V(1)))
        )
        v2 = LaurentTS({(1, -3): 1, (0, -2): -1})
        recs.append(
            _record("lemmas-v", {"name": "V2"}, repr(v2), repr(spin_gw.V(2)))
        )
        v10 = LaurentTS(
            {(-2, 0): Fraction(1, 2), (-1, -1): -1, (0, -2): Fraction(1, 2)}
        )
        recs.append(
            _record(
                "lemmas-v", {"name": "V10"}, repr(v10), repr(spin_gw.V2(1, 0))
            )
        )
        return recs

    def vk(k):
        def thunk():
            recs = []
            f = spin_gw.V(k)
            recs.append(
                _record(
                    "lemmas-v",
                    {"name": "Vk-regular", "k": k},
                    True,
                    f.min_t_exp() >= 0,
                )
            )
            want = monomial(
                0, -k, Fraction((-1) ** (k - 1) * _factorial(k - 1))
            )
            recs.append(
                _record(
                    "lemmas-v",
                    {"name": "Vk-at-T0", "k": k},
                    repr(want),
                    repr(f.subs_t0()),
                )
            )
            recs.append(
                _record(
                    "lemmas-v",
                    {"name": "Vk-homogeneous", "k": k},
                    True,
                    f.is_homogeneous(-k),
                )
            )
            recs.append(
                _record(
                    "lemmas-v",
                    {"name": "Vk-lambert", "k": k, "order": order},
                    True,
                    spin_gw.laurent_u_series(f, order)
                    == spin_gw.v_x_series(k, order),
                )
            )
            return recs

        return thunk

    def vkl(k, l):
        def thunk():
            recs = []
            f = spin_gw.V2(k, l)
            params = {"k": k, "l": l}
            if k >= 1 and l >= 1:
                reg = f - spin_gw.bernoulli_pole(k, l)
                recs.append(
                    _record(
                        "lemmas-v",
                        dict(params, name="Vkl-pole"),
                        True,
                        reg.min_t_exp() is None or reg.min_t_exp() >= 0,
                    )
                )
            recs.append(
                _record(
                    "lemmas-v",
                    dict(params, name="Vkl-diagonal"),
                    True,
                    f.subs_s_eq_t().is_zero(),
                )
            )
            recs.append(
                _record(
                    "lemmas-v",
                    dict(params, name="Vkl-homogeneous"),
                    True,
                    f.is_homogeneous(-k - l - 1),
                )
            )
            recs.append(
                _record(
                    "lemmas-v",
                    dict(params, name="Vkl-lambert", order=order),
                    True,
                    spin_gw.laurent_u_series(f, order)
                    == spin_gw.v2_x_series(k, l, order),
                )
            )
            return recs

        return thunk

    tasks = [closed_forms]
    for k in range(2, 9):
        tasks.append(vk(k))
    for k in range(0, 5):
        for l in range(0, k + 1):
            if k + l >= 1:
                tasks.append(vkl(k, l))
    return tasks


def tasks_lemmas_regularity(cfg: RunConfig):
    tasks = []
    gmax = min(cfg.gmax, 2)
    kcap = min(cfg.kmax, 5)
    for g in range(0, gmax + 1):
        for n in range(1, min(cfg.nmax, 3) + 1):
            if 2 * g - 2 + n <= 0:
                continue
            for ks in _bounded_tuples_capped(n, kcap):
                def thunk(g=g, ks=ks):
                    d_tot = sum(ks) - g + 1
                    ok = True
                    detail = ""
                    for d in range(1, max(d_tot, 0) + 3):
                        f = spin_gw.equiv_descendant(g, ks, d)
                        if d > d_tot:
                            if not f.is_zero():
                                ok, detail = False, f"nonzero at d={d}"
                                break
                        elif not set(f.c) <= {(d_tot - d, 0)}:
                            ok, detail = False, f"non-monomial at d={d}"
                            break
                    return [
                        _record(
                            "lemmas-regularity",
                            {"g": g, "k": list(ks)},
                            "monomial family",
                            "monomial family" if ok else detail,
                        )
                    ]

                tasks.append(thunk)
    return tasks


def tasks_lemmas_t0sd(cfg: RunConfig):
    tasks = []
    gmax = min(cfg.gmax, 2)
    kcap = min(cfg.kmax, 4)
    for g in range(0, gmax + 1):
        for n in range(1, min(cfg.nmax, 3) + 1):
            if 2 * g - 2 + n <= 0:
                continue
            for ks in _bounded_tuples_capped(n, kcap):
                d_tot = sum(ks) - g + 1
                dmax = d_tot if n >= 2 else 0
                for d in range(-1, dmax + 1):
                    def thunk(g=g, ks=ks, d=d):
                        want = spin_gw.t0_sd_predicted(g, ks, d)
                        got = spin_gw.t0_sd_actual(g, ks, d)
                        return [
                            _record(
                                "lemmas-t0sd",
                                {"g": g, "k": list(ks), "d": d},
                                frac_str(want),
                                frac_str(got),
                            )
                        ]

                    tasks.append(thunk)
    return tasks


def _bounded_tuples_capped(n, cap):
    """Sorted n-tuples with entries in 0..cap."""
    yield from itertools.combinations_with_replacement(range(cap + 1), n)


# ---------------------------------------------------------------------------
# anc: shift series and ancestor comparison
# ---------------------------------------------------------------------------


def tasks_anc(cfg: RunConfig):
    tasks = []

    def hat_p_t0():
        recs = []
        for k in range(0, min(cfg.kmax, 6) + 1):
            for h in range(0, 3):
                if h == 0 and k >= 2:
                    want = monomial(
                        0, -k, Fraction((-1) ** (k - 1) * _factorial(k - 1))
                    )
                else:
                    want = LaurentTS()
                recs.append(
                    _record(
                        "anc-hatp",
                        {"name": "T0", "k": k, "h": h},
                        repr(want),
                        repr(spin_gw.hat_P_at_T0(k, h)),
                    )
                )
        recs.append(
            _record(
                "anc-hatp",
                {"name": "hbar0-of-P2"},
                repr(spin_gw.V(2)),
                repr(spin_gw.hat_P(2)[0]),
            )
        )
        return recs

    tasks.append(hat_p_t0)
    gmax = min(cfg.gmax, 2)
    kcap = min(cfg.kmax, 4)
    dmax = min(cfg.dmax, 4)
    for g in range(0, gmax + 1):
        for n in (2, 3):
            if n > cfg.nmax or 2 * g - 2 + n <= 0:
                continue
            for ls in _bounded_tuples_capped(n, kcap):
                def thunk(g=g, ls=ls):
                    recs = []
                    tq = spin_gw.laurent_to_tq(
                        spin_gw.shifted_kw_ancestor(g, ls)
                    )
                    for d in range(1, dmax + 1):
                        want = {
                            t: v for (t, q), v in tq.items() if q == d
                        }
                        got = {
                            i: v
                            for (i, j), v in spin_gw.anc_q_coefficient(
                                g, ls, d
                            ).c.items()
                        }
                        recs.append(
                            _record(
                                "anc-compare",
                                {"g": g, "k": list(ls), "d": d},
                                tpoly_str(want),
                                tpoly_str(got),
                            )
                        )
                    return recs

                tasks.append(thunk)
    return tasks


# ---------------------------------------------------------------------------
# tr: topological recursion vs the J-pipeline, and doubling
# ---------------------------------------------------------------------------


def _stable_tr_pairs(cfg: RunConfig, euler_cap: int):
    for g in range(0, cfg.gmax + 1):
        for n in range(1, cfg.nmax + 1):
            if 0 < 2 * g - 2 + n <= euler_cap:
                yield g, n


def tasks_tr(cfg: RunConfig):
    spin_engine = tr.TREngine(tr.build_spin_curve())
    kn_engine = tr.TREngine(tr.build_kn_curve())
    tasks = []

    def table02():
        kmax = min(cfg.order, 8)
        want = tr.oracle_table_02(kmax)
        got = tr.descendant_table_02(kmax)
        recs = []
        for ks in sorted(set(want) | set(got)):
            recs.append(
                _record(
                    "tr-02",
                    {"g": 0, "n": 2, "k": list(ks)},
                    qpoly_str(want.get(ks, {})),
                    qpoly_str(got.get(ks, {})),
                )
            )
        return recs

    tasks.append(table02)

    for g, n in _stable_tr_pairs(cfg, 4):
        def compare(g=g, n=n):
            table = tr.expand_descendants(spin_engine, g, n, cfg.kmax)
            recs = []
            for ks in itertools.combinations_with_replacement(
                range(cfg.kmax + 1), n
            ):
                recs.append(
                    _record(
                        "tr-spin",
                        {"g": g, "n": n, "k": list(ks)},
                        qpoly_str(spin_gw.j_pipeline_descendant(g, ks)),
                        qpoly_str(table.get(ks, {})),
                    )
                )
            return recs

        tasks.append(compare)

    for g, n in _stable_tr_pairs(cfg, 3):
        def doubling(g=g, n=n):
            a = spin_engine.omega(g, n)
            b = tr.doubled_kn_omega(kn_engine, g, n)
            return [
                _record(
                    "tr-doubling",
                    {"g": g, "n": n},
                    tr.omega_to_text(a, g, n),
                    tr.omega_to_text(b, g, n),
                )
            ]

        tasks.append(doubling)
    return tasks


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------


def build_tasks(cfg: RunConfig, suites) -> list:
    hodge = load_hodge_table(cfg.hodge_table) if cfg.hodge_table else None
    tasks = []
    for suite in suites:
        if suite == "main":
            tasks += tasks_main(cfg)
        elif suite == "n10":
            tasks += tasks_n10(cfg, hodge)
        elif suite == "lemmas":
            tasks += tasks_lemmas_v(cfg)
            tasks += tasks_lemmas_regularity(cfg)
            tasks += tasks_lemmas_t0sd(cfg)
        elif suite == "anc":
            tasks += tasks_anc(cfg)
        elif suite == "tr":
            tasks += tasks_tr(cfg)
        else:
            raise ValueError(f"unknown suite {suite!r}")
    return tasks


def run_tasks(tasks, jobs: int) -> list:
    records = []
    if jobs <= 1:
        for task in tasks:
            records.extend(task())
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(lambda t: t(), tasks):
                records.extend(result)
    return records


def load_wk_cache(cfg: RunConfig):
    if not cfg.cache_dir:
        return
    path = os.path.join(cfg.cache_dir, WK_CACHE_NAME)
    if os.path.exists(path):
        default_table().merge(CorrelatorTable.load(path))


def save_wk_cache(cfg: RunConfig):
    if not cfg.cache_dir:
        return
    os.makedirs(cfg.cache_dir, exist_ok=True)
    default_table().save(os.path.join(cfg.cache_dir, WK_CACHE_NAME))


def dump_invariants(cfg: RunConfig) -> dict:
    """Deterministic dump of the basic exact data: cached psi correlators,
    J-class expansions, and J-pipeline descendant/ancestor tables."""
    corr = {
        f"{g};{','.join(map(str, ks))}": frac_str(v)
        for (g, ks), v in sorted(default_table().items())
    }
    jcls = {}
    for p in range(0, cfg.order + 1):
        jcls[str(p)] = {
            ",".join(map(str, mono)): frac_str(c)
            for mono, c in sorted(j_class(p).items())
        }
    tables = {}
    for g in range(0, min(cfg.gmax, 2) + 1):
        for n in range(1, min(cfg.nmax, 3) + 1):
            if 2 * g - 2 + n <= 0:
                continue
            for ks in _bounded_tuples_capped(n, min(cfg.kmax, 4)):
                key = f"{g};{','.join(map(str, ks))}"
                tables[key] = {
                    "descendant": qpoly_str(
                        spin_gw.j_pipeline_descendant(g, ks)
                    ),
                    "ancestor": qpoly_str(spin_gw.j_pipeline_ancestor(g, ks)),
                }
    return {
        "version": "1",
        "correlators": corr,
        "j_classes": jcls,
        "j_pipeline": tables,
    }
