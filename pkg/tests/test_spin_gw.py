"""Localization sums, edge functions, and the ancestor/descendant calculus."""

from fractions import Fraction

import pytest

from modulitr import spin_gw
from modulitr.errors import DomainError, LogTermError
from modulitr.laurent import LaurentTS, monomial


def test_v1_v2_closed_forms():
    assert spin_gw.V(1) == LaurentTS({(0, -1): 1, (-1, 0): -1})
    assert spin_gw.V(2) == LaurentTS({(1, -3): 1, (0, -2): -1})


def test_v10_closed_form():
    assert spin_gw.V2(1, 0) == LaurentTS(
        {(-2, 0): Fraction(1, 2), (-1, -1): -1, (0, -2): Fraction(1, 2)}
    )


def test_vk_t0_and_homogeneity():
    import math

    for k in range(2, 7):
        f = spin_gw.V(k)
        assert f.min_t_exp() >= 0
        assert f.subs_t0() == monomial(
            0, -k, Fraction((-1) ** (k - 1) * math.factorial(k - 1))
        )
        assert f.is_homogeneous(-k)


def test_vkl_pole_structure():
    for k in range(1, 4):
        for l in range(1, 4):
            f = spin_gw.V2(k, l)
            assert f.is_homogeneous(-k - l - 1)
            assert f.subs_s_eq_t().is_zero()
            reg = f - spin_gw.bernoulli_pole(k, l)
            assert reg.min_t_exp() is None or reg.min_t_exp() >= 0


def test_v00_needs_a_log():
    with pytest.raises(LogTermError):
        spin_gw.V2(0, 0)


def test_lambert_series_identities():
    for k in range(1, 6):
        assert spin_gw.laurent_u_series(spin_gw.V(k), 8) == spin_gw.v_x_series(k, 8)
    for k in range(0, 3):
        for l in range(0, 3):
            if k + l == 0:
                continue
            assert spin_gw.laurent_u_series(
                spin_gw.V2(k, l), 8
            ) == spin_gw.v2_x_series(k, l, 8)


def test_equivariant_descendants_are_monomial():
    for g, ks in [(0, (1, 1, 1)), (1, (2, 0)), (2, (3,))]:
        d_tot = sum(ks) - g + 1
        for d in range(1, d_tot + 3):
            f = spin_gw.equiv_descendant(g, ks, d)
            if d > d_tot:
                assert f.is_zero()
            else:
                assert set(f.c) <= {(d_tot - d, 0)}


def test_degree_zero_descendant():
    # degree-zero maps contribute T^{2g-2+n} times the psi intersection number
    assert spin_gw.degree_zero_descendant(1, (1,)) == monomial(
        1, 0, Fraction(1, 24)
    )
    assert spin_gw.degree_zero_descendant(0, (0, 0, 0)) == monomial(1, 0)


def test_j_pipeline_pinned():
    assert spin_gw.j_pipeline_descendant(1, (1,)) == {1: Fraction(-1, 12)}
    assert spin_gw.j_pipeline_descendant(0, (0, 0, 0)) == {1: Fraction(-1)}


def test_anc_des_roundtrip():
    # the two triangular substitutions are mutually inverse
    des = {ks: spin_gw.j_pipeline_descendant(1, ks) for ks in
           [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]}
    back = spin_gw.des_from_anc(
        {ls: spin_gw.anc_from_des(des, ls) for ls in
         [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]},
        (1, 1),
    )
    assert back == des[(1, 1)]


def test_ancestor_comparison_small():
    for g, ls in [(0, (0, 0, 1)), (1, (1, 1)), (1, (0, 2))]:
        tq = spin_gw.laurent_to_tq(spin_gw.shifted_kw_ancestor(g, ls))
        for d in (1, 2, 3):
            want = {t: v for (t, q), v in tq.items() if q == d}
            got = {
                i: v
                for (i, j), v in spin_gw.anc_q_coefficient(g, ls, d).c.items()
            }
            assert want == got


def test_shifted_ancestor_domain():
    with pytest.raises(DomainError):
        spin_gw.shifted_kw_ancestor(1, (0,))
    with pytest.raises(DomainError):
        spin_gw.shifted_kw_ancestor(0, (0, 0))


def test_t0_coefficient_identity_small():
    for g, ks in [(0, (1, 1, 1)), (1, (1, 1)), (1, (2, 0))]:
        d_tot = sum(ks) - g + 1
        for d in range(-1, d_tot + 1):
            assert spin_gw.t0_sd_actual(g, ks, d) == spin_gw.t0_sd_predicted(
                g, ks, d
            )


def test_t0_one_point_delta_term():
    # at d = 0 the single-insertion case picks up the Hodge delta term
    for g in (1, 2):
        k = 3 * g - 2
        assert spin_gw.t0_sd_actual(g, (k,), 0) == spin_gw.t0_sd_predicted(
            g, (k,), 0
        )


def test_hat_p_t0_limits():
    import math

    for k in (0, 1):
        for h in (0, 1, 2):
            assert spin_gw.hat_P_at_T0(k, h).is_zero()
    for k in (2, 3, 4):
        assert spin_gw.hat_P_at_T0(k, 0) == monomial(
            0, -k, Fraction((-1) ** (k - 1) * math.factorial(k - 1))
        )
        for h in (1, 2):
            assert spin_gw.hat_P_at_T0(k, h).is_zero()


def test_hat_p_hbar0_is_v():
    assert spin_gw.hat_P(2)[0] == spin_gw.V(2)
    assert spin_gw.hat_P(3)[0] == spin_gw.V(3)
